use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::algebra::{Conjugation, Field};
use crate::qtype::TypeSet;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Sym(String),
    Add(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    ScalarMul(BigRational, Box<Expr>),
    /// Multiplication by the imaginary unit (complex field only).
    IMul(Box<Expr>),
    Prod(Box<Expr>, Box<Expr>),
    Comm(Box<Expr>, Box<Expr>),
    AntiComm(Box<Expr>, Box<Expr>),
    Conj(Conjugation, Box<Expr>),
}

#[allow(clippy::should_implement_trait)]
impl Expr {
    pub fn sym(name: &str) -> Expr {
        Expr::Sym(name.to_string())
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::Add(Box::new(a), Box::new(b))
    }

    /// Negation; a double negation cancels.
    pub fn neg(a: Expr) -> Expr {
        match a {
            Expr::Neg(inner) => *inner,
            other => Expr::Neg(Box::new(other)),
        }
    }

    pub fn scale(r: BigRational, a: Expr) -> Expr {
        Expr::ScalarMul(r, Box::new(a))
    }

    pub fn imul(a: Expr) -> Expr {
        Expr::IMul(Box::new(a))
    }

    pub fn prod(a: Expr, b: Expr) -> Expr {
        Expr::Prod(Box::new(a), Box::new(b))
    }

    pub fn comm(a: Expr, b: Expr) -> Expr {
        Expr::Comm(Box::new(a), Box::new(b))
    }

    pub fn anticomm(a: Expr, b: Expr) -> Expr {
        Expr::AntiComm(Box::new(a), Box::new(b))
    }

    /// Applies a conjugation node, merging with a directly nested one
    /// (conjugations commute and are involutions).
    pub fn conj(c: Conjugation, e: Expr) -> Expr {
        match e {
            Expr::Conj(inner, body) => match c.compose(inner) {
                Some(merged) => Expr::Conj(merged, body),
                None => *body,
            },
            other => Expr::Conj(c, Box::new(other)),
        }
    }

    /// Symbol names in order of first occurrence.
    pub fn symbols(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut Vec<String>) {
        match self {
            Expr::Sym(name) => {
                if !out.contains(name) {
                    out.push(name.clone());
                }
            }
            Expr::Neg(a) | Expr::ScalarMul(_, a) | Expr::IMul(a) | Expr::Conj(_, a) => a.collect_symbols(out),
            Expr::Add(a, b) | Expr::Prod(a, b) | Expr::Comm(a, b) | Expr::AntiComm(a, b) => {
                a.collect_symbols(out);
                b.collect_symbols(out);
            }
        }
    }

    /// Whether the expression uses `i`, `conj` or `phc`.
    pub fn needs_complex(&self) -> bool {
        match self {
            Expr::Sym(_) => false,
            Expr::IMul(_) => true,
            Expr::Conj(c, a) => c.requires_complex() || a.needs_complex(),
            Expr::Neg(a) | Expr::ScalarMul(_, a) => a.needs_complex(),
            Expr::Add(a, b) | Expr::Prod(a, b) | Expr::Comm(a, b) | Expr::AntiComm(a, b) => {
                a.needs_complex() || b.needs_complex()
            }
        }
    }
}

/// Pushes a conjugation down to the symbols using the (anti-)automorphism
/// rules: anti-automorphisms reverse products and negate commutators,
/// antilinear ones negate `i`.
pub fn conjugate_expr(c: Conjugation, e: &Expr) -> Expr {
    let anti = c.is_anti_automorphism();
    match e {
        Expr::Sym(_) => Expr::conj(c, e.clone()),
        Expr::Conj(inner, body) => match c.compose(*inner) {
            Some(merged) => conjugate_expr(merged, body),
            None => push_down(body),
        },
        Expr::Add(a, b) => Expr::add(conjugate_expr(c, a), conjugate_expr(c, b)),
        Expr::Neg(a) => Expr::neg(conjugate_expr(c, a)),
        Expr::ScalarMul(r, a) => Expr::scale(r.clone(), conjugate_expr(c, a)),
        Expr::IMul(a) => {
            let inner = Expr::imul(conjugate_expr(c, a));
            if c.is_antilinear() {
                Expr::neg(inner)
            } else {
                inner
            }
        }
        Expr::Prod(a, b) => {
            let (ca, cb) = (conjugate_expr(c, a), conjugate_expr(c, b));
            if anti {
                Expr::prod(cb, ca)
            } else {
                Expr::prod(ca, cb)
            }
        }
        Expr::Comm(a, b) => {
            let inner = Expr::comm(conjugate_expr(c, a), conjugate_expr(c, b));
            if anti {
                Expr::neg(inner)
            } else {
                inner
            }
        }
        Expr::AntiComm(a, b) => Expr::anticomm(conjugate_expr(c, a), conjugate_expr(c, b)),
    }
}

/// `e` with every conjugation node pushed down to the symbols.
fn push_down(e: &Expr) -> Expr {
    let go = |a: &Expr| push_down(a);
    match e {
        Expr::Sym(_) => e.clone(),
        Expr::Conj(c, body) => conjugate_expr(*c, body),
        Expr::Add(a, b) => Expr::add(go(a), go(b)),
        Expr::Neg(a) => Expr::neg(go(a)),
        Expr::ScalarMul(r, a) => Expr::scale(r.clone(), go(a)),
        Expr::IMul(a) => Expr::imul(go(a)),
        Expr::Prod(a, b) => Expr::prod(go(a), go(b)),
        Expr::Comm(a, b) => Expr::comm(go(a), go(b)),
        Expr::AntiComm(a, b) => Expr::anticomm(go(a), go(b)),
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Sym(name) => f.write_str(name),
            Expr::Add(a, b) => match b.as_ref() {
                Expr::Neg(inner) => write!(f, "({a} - {inner})"),
                _ => write!(f, "({a} + {b})"),
            },
            Expr::Neg(a) if matches!(a.as_ref(), Expr::ScalarMul(..)) => write!(f, "-({a})"),
            Expr::Neg(a) => write!(f, "-{a}"),
            Expr::ScalarMul(r, a) => {
                if r.is_negative() {
                    write!(f, "-{}*{a}", format_rational(&-r))
                } else {
                    write!(f, "{}*{a}", format_rational(r))
                }
            }
            Expr::IMul(a) => write!(f, "i*{a}"),
            Expr::Prod(a, b) => write!(f, "({a} * {b})"),
            Expr::Comm(a, b) => write!(f, "[{a}, {b}]"),
            Expr::AntiComm(a, b) => write!(f, "{{{a}, {b}}}"),
            Expr::Conj(c, a) => {
                let names = c.call_names();
                for name in names {
                    write!(f, "{name}(")?;
                }
                write!(f, "{a}")?;
                for _ in names {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Declared symbol types; undeclared symbols range over the whole algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeEnv {
    pub field: Field,
    decls: BTreeMap<String, TypeSet>,
}

impl TypeEnv {
    pub fn new(field: Field) -> TypeEnv {
        TypeEnv { field, decls: BTreeMap::new() }
    }

    /// Adds a declaration; returns `false` if the name was already declared.
    pub fn declare(&mut self, name: &str, t: TypeSet) -> bool {
        if self.decls.contains_key(name) {
            return false;
        }
        self.decls.insert(name.to_string(), t);
        true
    }

    pub fn with(mut self, name: &str, t: TypeSet) -> TypeEnv {
        self.decls.insert(name.to_string(), t);
        self
    }

    pub fn lookup(&self, name: &str) -> TypeSet {
        self.decls.get(name).copied().unwrap_or_else(|| TypeSet::full(self.field))
    }

    pub fn declared(&self) -> impl Iterator<Item = (&str, TypeSet)> {
        self.decls.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

/// A parsed program: declarations and the expression they scope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Program {
    pub env: TypeEnv,
    pub expr: Expr,
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, t) in self.env.declared() {
            write!(f, "let {name}:{t}; ")?;
        }
        write!(f, "{}", self.expr)
    }
}
