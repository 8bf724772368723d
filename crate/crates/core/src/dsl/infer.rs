use super::ast::{Expr, TypeEnv};
use super::poly::{LetterNormalizer, Poly};
use crate::algebra::{Conjugation, Field};
use crate::qtype::{eigenspace, ClosureTables, TypeSet};

/// Sound over-approximation of the quaternion type of `expr`.
pub fn infer_type(expr: &Expr, env: &TypeEnv) -> TypeSet {
    infer_type_with(expr, env, ClosureTables::standard())
}

/// [`infer_type`] against explicit closure tables.
///
/// Every node gets two passes. The compositional pass combines the children's
/// types through the closure tables (conjugations and scalars preserve types,
/// `i` swaps real and imaginary atoms). The refinement pass expands the node
/// into its polynomial normal form; if a conjugation maps it to itself (or to
/// its negative) the type is intersected with that conjugation's `+1` (`-1`)
/// eigenspace, and a zero normal form gives the empty type.
pub fn infer_type_with(expr: &Expr, env: &TypeEnv, tables: &ClosureTables) -> TypeSet {
    let norm = LetterNormalizer::new(env);
    Inference { env, tables, norm: &norm }.walk(expr).0
}

struct Inference<'a> {
    env: &'a TypeEnv,
    tables: &'a ClosureTables,
    norm: &'a LetterNormalizer,
}

impl Inference<'_> {
    fn walk(&self, e: &Expr) -> (TypeSet, Option<Poly>) {
        let (t, kids) = match e {
            Expr::Sym(name) => (self.env.lookup(name), vec![]),
            Expr::Add(a, b) => {
                let (ta, pa) = self.walk(a);
                let (tb, pb) = self.walk(b);
                (ta.union(tb), vec![pa, pb])
            }
            Expr::Neg(a) | Expr::Conj(_, a) => {
                let (ta, pa) = self.walk(a);
                (ta, vec![pa])
            }
            Expr::ScalarMul(r, a) => {
                let (ta, pa) = self.walk(a);
                let t = if num_traits::Zero::is_zero(r) { TypeSet::EMPTY } else { ta };
                (t, vec![pa])
            }
            Expr::IMul(a) => {
                let (ta, pa) = self.walk(a);
                (ta.times_i(), vec![pa])
            }
            Expr::Prod(a, b) | Expr::Comm(a, b) | Expr::AntiComm(a, b) => {
                let (ta, pa) = self.walk(a);
                let (tb, pb) = self.walk(b);
                let t = match e {
                    Expr::Prod(..) => self.tables.product_type(ta, tb),
                    Expr::Comm(..) => self.tables.commutator_type(ta, tb),
                    _ => self.tables.anticommutator_type(ta, tb),
                };
                (t, vec![pa, pb])
            }
        };
        let poly = Poly::combine(e, &kids, self.norm);
        let t = match &poly {
            Some(p) => refine(t, p, self.norm, self.env.field),
            None => t,
        };
        (t, poly)
    }
}

fn refine(mut t: TypeSet, p: &Poly, norm: &LetterNormalizer, field: Field) -> TypeSet {
    if p.is_zero() {
        return TypeSet::EMPTY;
    }
    let ops: &[Conjugation] = match field {
        Field::Real => &Conjugation::REAL,
        Field::Complex => &Conjugation::ALL,
    };
    let neg = p.neg();
    for &c in ops {
        let image = p.conjugate(c, norm);
        let sign = if image == *p {
            1
        } else if image == neg {
            -1
        } else {
            continue;
        };
        t = t.intersection(eigenspace(c, sign, field).expect("ops filtered by field"));
    }
    t
}
