use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::blade::{blade_commutation_sign, blade_mul};
use super::{Backend, Blade, Coeff, Conjugation, Field, Real, Signature};
use crate::error::{Error, Result};

/// The algebra a multivector lives in: `Cl(p,q)` over a field, with a
/// coefficient backend.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Space {
    pub signature: Signature,
    pub field: Field,
    pub backend: Backend,
}

impl Space {
    pub fn new(signature: Signature, field: Field, backend: Backend) -> Space {
        Space { signature, field, backend }
    }

    pub fn real_exact(signature: Signature) -> Space {
        Space::new(signature, Field::Real, Backend::Exact)
    }

    pub fn complex_exact(signature: Signature) -> Space {
        Space::new(signature, Field::Complex, Backend::Exact)
    }

    pub fn n(&self) -> usize {
        self.signature.n()
    }

    fn check(&self, other: &Space) -> Result<()> {
        if self.signature != other.signature {
            return Err(Error::SignatureMismatch(self.signature, other.signature));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        if self.backend != other.backend {
            return Err(Error::BackendMismatch(self.backend, other.backend));
        }
        Ok(())
    }
}

/// A sparse element `U = u e + u_a e^a + ... + u_{1..n} e^{1..n}`.
///
/// Only nonzero coefficients are stored.
#[derive(Debug, Clone, PartialEq)]
pub struct Multivector {
    space: Space,
    terms: BTreeMap<Blade, Coeff>,
}

impl Multivector {
    pub fn zero(space: Space) -> Multivector {
        Multivector { space, terms: BTreeMap::new() }
    }

    pub fn scalar(space: Space, c: Coeff) -> Result<Multivector> {
        Multivector::from_terms(space, [(Blade::IDENTITY, c)])
    }

    /// `k e` for an integer `k`.
    pub fn int(space: Space, k: i64) -> Multivector {
        let mut mv = Multivector::zero(space);
        mv.add_term(Blade::IDENTITY, Coeff::from_int(k, space.backend));
        mv
    }

    /// A basis blade with coefficient 1.
    pub fn blade(space: Space, blade: Blade) -> Result<Multivector> {
        Multivector::from_terms(space, [(blade, Coeff::from_int(1, space.backend))])
    }

    /// Builds a multivector, summing repeated blades. Rejects blades outside
    /// the signature and imaginary parts in a real algebra.
    pub fn from_terms(space: Space, terms: impl IntoIterator<Item = (Blade, Coeff)>) -> Result<Multivector> {
        let mut mv = Multivector::zero(space);
        for (blade, c) in terms {
            if !blade.fits(space.signature) {
                return Err(Error::usage(format!(
                    "blade {blade} is outside the algebra with signature {}",
                    space.signature
                )));
            }
            if space.field == Field::Real && !c.is_real() {
                return Err(Error::usage("complex coefficient in a real algebra"));
            }
            let c = match space.backend {
                Backend::Exact => c,
                Backend::Float => Coeff::new(Real::Float(c.re.to_f64()), Real::Float(c.im.to_f64())),
            };
            mv.add_term(blade, c);
        }
        Ok(mv)
    }

    pub(crate) fn add_term(&mut self, blade: Blade, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&blade) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&blade);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(blade, c);
            }
        }
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn signature(&self) -> Signature {
        self.space.signature
    }

    pub fn field(&self) -> Field {
        self.space.field
    }

    pub fn backend(&self) -> Backend {
        self.space.backend
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

    pub fn terms(&self) -> impl Iterator<Item = (Blade, &Coeff)> {
        self.terms.iter().map(|(b, c)| (*b, c))
    }

    pub fn coeff(&self, blade: Blade) -> Option<&Coeff> {
        self.terms.get(&blade)
    }

    /// Largest `|re|` or `|im|` over all coefficients.
    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(Coeff::max_abs).fold(0.0, f64::max)
    }

    fn map_terms(&self, mut f: impl FnMut(Blade, &Coeff) -> Coeff) -> Multivector {
        let mut out = Multivector::zero(self.space);
        for (&b, c) in &self.terms {
            out.add_term(b, f(b, c));
        }
        out
    }

    fn filter(&self, mut keep: impl FnMut(Blade) -> bool) -> Multivector {
        Multivector {
            space: self.space,
            terms: self.terms.iter().filter(|(b, _)| keep(**b)).map(|(b, c)| (*b, c.clone())).collect(),
        }
    }

    pub fn add(&self, other: &Multivector) -> Result<Multivector> {
        self.space.check(&other.space)?;
        let mut out = self.clone();
        for (&b, c) in &other.terms {
            out.add_term(b, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Multivector) -> Result<Multivector> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Multivector {
        self.map_terms(|_, c| -c)
    }

    pub fn scalar_mul(&self, c: &Coeff) -> Result<Multivector> {
        if self.space.field == Field::Real && !c.is_real() {
            return Err(Error::ComplexOnly { op: "multiplication by a complex scalar" });
        }
        Ok(self.map_terms(|_, x| c * x))
    }

    /// Geometric product, the bilinear extension of [`blade_mul`].
    pub fn geometric_product(&self, other: &Multivector) -> Result<Multivector> {
        self.space.check(&other.space)?;
        let sig = self.space.signature;
        let mut acc: HashMap<Blade, Coeff> = HashMap::new();
        for (&a, ca) in &self.terms {
            for (&b, cb) in &other.terms {
                let (sign, blade) = blade_mul(a, b, sig);
                let prod = ca * cb;
                let prod = if sign < 0 { -&prod } else { prod };
                accumulate(&mut acc, blade, prod);
            }
        }
        Ok(self.collect(acc))
    }

    fn collect(&self, acc: HashMap<Blade, Coeff>) -> Multivector {
        Multivector {
            space: self.space,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// `[U,V] = UV - VU`.
    ///
    /// Computed blade pair by blade pair: commuting pairs cancel, anticommuting
    /// pairs contribute twice their product.
    pub fn commutator(&self, other: &Multivector) -> Result<Multivector> {
        self.bracket(other, -1)
    }

    /// `{U,V} = UV + VU`.
    pub fn anticommutator(&self, other: &Multivector) -> Result<Multivector> {
        self.bracket(other, 1)
    }

    fn bracket(&self, other: &Multivector, kept: i8) -> Result<Multivector> {
        self.space.check(&other.space)?;
        let sig = self.space.signature;
        let mut acc: HashMap<Blade, Coeff> = HashMap::new();
        for (&a, ca) in &self.terms {
            for (&b, cb) in &other.terms {
                // ab + s*ba = (1 + s*c) ab where ba = c ab
                if blade_commutation_sign(a, b) * kept != 1 {
                    continue;
                }
                let (sign, blade) = blade_mul(a, b, sig);
                let prod = (ca * cb).scale_int(2 * sign as i64);
                accumulate(&mut acc, blade, prod);
            }
        }
        Ok(self.collect(acc))
    }

    /// Part of rank exactly `k`.
    pub fn grade_project(&self, k: usize) -> Result<Multivector> {
        if k > self.space.n() {
            return Err(Error::usage(format!("rank {k} exceeds n = {}", self.space.n())));
        }
        Ok(self.filter(|b| b.rank() == k))
    }

    pub fn ranks(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.keys().map(|b| b.rank())
    }

    /// `U~`: rank-`k` part scaled by `(-1)^(k(k-1)/2)`.
    pub fn reversion(&self) -> Multivector {
        self.apply_conjugation(Conjugation::Reversion)
    }

    /// `U^`: rank-`k` part scaled by `(-1)^k`.
    pub fn grade_involution(&self) -> Multivector {
        self.apply_conjugation(Conjugation::GradeInvolution)
    }

    /// `U-`: coefficient-wise complex conjugation in the generator basis.
    pub fn complex_conjugate(&self) -> Result<Multivector> {
        self.conjugate(Conjugation::Complex)
    }

    /// `U‡ = (U~)-`.
    pub fn pseudo_hermitian(&self) -> Result<Multivector> {
        self.conjugate(Conjugation::PseudoHermitian)
    }

    pub fn conjugate(&self, c: Conjugation) -> Result<Multivector> {
        c.check_field(self.space.field)?;
        Ok(self.apply_conjugation(c))
    }

    fn apply_conjugation(&self, c: Conjugation) -> Multivector {
        self.map_terms(|b, x| {
            let r = b.rank();
            let re = if c.sign(r, false) < 0 { -&x.re } else { x.re.clone() };
            let im = if c.sign(r, true) < 0 { -&x.im } else { x.im.clone() };
            Coeff::new(re, im)
        })
    }

    pub fn even_part(&self) -> Multivector {
        self.filter(|b| b.rank() % 2 == 0)
    }

    pub fn odd_part(&self) -> Multivector {
        self.filter(|b| b.rank() % 2 == 1)
    }

    /// Coefficient-wise real part (a multivector in the same space).
    pub fn real_part(&self) -> Multivector {
        self.map_terms(|_, c| Coeff::real(c.re.clone()))
    }

    /// Coefficient-wise imaginary part, as real coefficients.
    pub fn imag_part(&self) -> Multivector {
        self.map_terms(|_, c| Coeff::real(c.im.clone()))
    }

    /// Equality up to `tol * max(|U|, |V|, 1)` per coefficient; on the exact
    /// backend this is plain equality.
    pub fn approx_eq(&self, other: &Multivector, tol: f64) -> bool {
        if self.space != other.space {
            return false;
        }
        if self.space.backend == Backend::Exact {
            return self == other;
        }
        let scale = self.max_abs().max(other.max_abs()).max(1.0);
        match self.sub(other) {
            Ok(d) => d.max_abs() <= tol * scale,
            Err(_) => false,
        }
    }
}

fn accumulate(acc: &mut HashMap<Blade, Coeff>, blade: Blade, c: Coeff) {
    match acc.get_mut(&blade) {
        Some(existing) => *existing = &*existing + &c,
        None => {
            acc.insert(blade, c);
        }
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::format_mv(self))
    }
}
