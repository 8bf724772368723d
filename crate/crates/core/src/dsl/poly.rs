//! Normal form for equality tests: an expression expanded into a
//! noncommutative polynomial with complex-rational coefficients, whose letters
//! are symbols carrying a set of applied conjugations.
//!
//! Two expressions with equal polynomials are equal in every Clifford
//! algebra, so comparing `c(P)` against `±P` decides whether the expression is
//! fixed or negated by the conjugation `c`.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ast::{Expr, TypeEnv};
use crate::algebra::{Conjugation, Field};
use crate::qtype::{eigenspace, TypeSet};

/// Expansion cap; larger expressions skip refinement.
const MAX_TERMS: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub sym: String,
    /// Bit set of applied rev/gri/conj generators.
    pub flags: u8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Cx {
    re: BigRational,
    im: BigRational,
}

impl Cx {
    fn real(r: BigRational) -> Cx {
        Cx { re: r, im: BigRational::zero() }
    }

    fn i() -> Cx {
        Cx { re: BigRational::zero(), im: BigRational::one() }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn mul(&self, o: &Cx) -> Cx {
        Cx { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }

    fn add(&self, o: &Cx) -> Cx {
        Cx { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    fn neg(&self) -> Cx {
        Cx { re: -&self.re, im: -&self.im }
    }

    fn conj(&self) -> Cx {
        Cx { re: self.re.clone(), im: -&self.im }
    }
}

/// Rewrites a conjugated symbol using what its declared type implies: if
/// every atom of the type has the same eigenvalue `s` under a conjugation
/// `h`, then `h(x) = s x`. Letters are reduced to the smallest flag set in
/// their coset of that stabilizer group.
#[derive(Debug, Clone)]
pub struct LetterNormalizer {
    field: Field,
    tables: HashMap<String, [Option<(i8, u8)>; 8]>,
    default: [Option<(i8, u8)>; 8],
}

impl LetterNormalizer {
    pub fn new(env: &TypeEnv) -> LetterNormalizer {
        let field = env.field;
        let tables = env.declared().map(|(name, t)| (name.to_string(), Self::table(t, field))).collect();
        LetterNormalizer { field, tables, default: Self::table(TypeSet::full(field), field) }
    }

    /// For each flag set: `None` when the symbol is zero, else
    /// `(sign, reduced flags)`.
    fn table(t: TypeSet, field: Field) -> [Option<(i8, u8)>; 8] {
        if t.is_empty() {
            return [None; 8];
        }
        let mut stabilizer: Vec<(u8, i8)> = vec![(0, 1)];
        for c in Conjugation::ALL {
            if c.requires_complex() && field == Field::Real {
                continue;
            }
            for s in [1i8, -1] {
                if t.is_subset(eigenspace(c, s, field).expect("field checked")) {
                    stabilizer.push((c.flags(), s));
                }
            }
        }
        std::array::from_fn(|f| {
            let f = f as u8;
            stabilizer
                .iter()
                .map(|&(h, s)| (f ^ h, s))
                .min_by_key(|&(rep, _)| rep)
                .map(|(rep, s)| (s, rep))
        })
    }

    fn normalize(&self, letter: &Letter) -> Option<(i8, Letter)> {
        let table = self.tables.get(&letter.sym).unwrap_or(&self.default);
        table[letter.flags as usize].map(|(s, flags)| (s, Letter { sym: letter.sym.clone(), flags }))
    }

    pub fn field(&self) -> Field {
        self.field
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Vec<Letter>, Cx>,
}

impl Poly {
    fn zero() -> Poly {
        Poly { terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn letter(letter: Letter, norm: &LetterNormalizer) -> Poly {
        let mut p = Poly::zero();
        if let Some((s, l)) = norm.normalize(&letter) {
            let c = Cx::real(BigRational::from_integer(s.into()));
            p.push(vec![l], c);
        }
        p
    }

    fn push(&mut self, word: Vec<Letter>, c: Cx) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&word) {
            Some(existing) => {
                let sum = existing.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&word);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(word, c);
            }
        }
    }

    fn add(&self, o: &Poly) -> Option<Poly> {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.push(w.clone(), c.clone());
        }
        (out.len() <= MAX_TERMS).then_some(out)
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect() }
    }

    fn scale(&self, k: &Cx) -> Poly {
        let mut out = Poly::zero();
        for (w, c) in &self.terms {
            out.push(w.clone(), c.mul(k));
        }
        out
    }

    fn mul(&self, o: &Poly) -> Option<Poly> {
        if self.len().saturating_mul(o.len()) > MAX_TERMS * 4 {
            return None;
        }
        let mut out = Poly::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &o.terms {
                let mut w = wa.clone();
                w.extend(wb.iter().cloned());
                out.push(w, ca.mul(cb));
            }
        }
        (out.len() <= MAX_TERMS).then_some(out)
    }

    /// Applies `c` termwise: every letter gains `c`, words reverse for
    /// anti-automorphisms, coefficients conjugate for antilinear `c`.
    pub fn conjugate(&self, c: Conjugation, norm: &LetterNormalizer) -> Poly {
        let mut out = Poly::zero();
        'terms: for (word, coeff) in &self.terms {
            let mut sign = 1i8;
            let mut new_word = Vec::with_capacity(word.len());
            for l in word {
                let shifted = Letter { sym: l.sym.clone(), flags: l.flags ^ c.flags() };
                match norm.normalize(&shifted) {
                    Some((s, nl)) => {
                        sign *= s;
                        new_word.push(nl);
                    }
                    None => continue 'terms,
                }
            }
            if c.is_anti_automorphism() {
                new_word.reverse();
            }
            let mut k = if c.is_antilinear() { coeff.conj() } else { coeff.clone() };
            if sign < 0 {
                k = k.neg();
            }
            out.push(new_word, k);
        }
        out
    }

    /// Expands `e`; `None` if the expansion exceeds the size cap.
    pub fn from_expr(e: &Expr, norm: &LetterNormalizer) -> Option<Poly> {
        Some(match e {
            Expr::Sym(name) => Poly::letter(Letter { sym: name.clone(), flags: 0 }, norm),
            Expr::Add(a, b) => Poly::from_expr(a, norm)?.add(&Poly::from_expr(b, norm)?)?,
            Expr::Neg(a) => Poly::from_expr(a, norm)?.neg(),
            Expr::ScalarMul(r, a) => Poly::from_expr(a, norm)?.scale(&Cx::real(r.clone())),
            Expr::IMul(a) => Poly::from_expr(a, norm)?.scale(&Cx::i()),
            Expr::Prod(a, b) => Poly::from_expr(a, norm)?.mul(&Poly::from_expr(b, norm)?)?,
            Expr::Comm(a, b) | Expr::AntiComm(a, b) => {
                let (pa, pb) = (Poly::from_expr(a, norm)?, Poly::from_expr(b, norm)?);
                let ab = pa.mul(&pb)?;
                let ba = pb.mul(&pa)?;
                if matches!(e, Expr::Comm(..)) {
                    ab.add(&ba.neg())?
                } else {
                    ab.add(&ba)?
                }
            }
            Expr::Conj(c, a) => Poly::from_expr(a, norm)?.conjugate(*c, norm),
        })
    }

    /// Combines already-expanded children the same way [`Poly::from_expr`]
    /// would for the node `e`.
    pub(crate) fn combine(e: &Expr, kids: &[Option<Poly>], norm: &LetterNormalizer) -> Option<Poly> {
        match e {
            Expr::Sym(_) => Poly::from_expr(e, norm),
            Expr::Add(..) => kids[0].as_ref()?.add(kids[1].as_ref()?),
            Expr::Neg(_) => Some(kids[0].as_ref()?.neg()),
            Expr::ScalarMul(r, _) => Some(kids[0].as_ref()?.scale(&Cx::real(r.clone()))),
            Expr::IMul(_) => Some(kids[0].as_ref()?.scale(&Cx::i())),
            Expr::Prod(..) => kids[0].as_ref()?.mul(kids[1].as_ref()?),
            Expr::Comm(..) | Expr::AntiComm(..) => {
                let (pa, pb) = (kids[0].as_ref()?, kids[1].as_ref()?);
                let ab = pa.mul(pb)?;
                let ba = pb.mul(pa)?;
                if matches!(e, Expr::Comm(..)) {
                    ab.add(&ba.neg())
                } else {
                    ab.add(&ba)
                }
            }
            Expr::Conj(c, _) => Some(kids[0].as_ref()?.conjugate(*c, norm)),
        }
    }
}
