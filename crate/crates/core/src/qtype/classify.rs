use super::{atom_sign, MainType, TypeAtom, TypeSet};
use crate::algebra::{Backend, Coeff, Conjugation, Field, Multivector, Real, FLOAT_TOLERANCE};

/// Minimal type set of `u`, read off the ranks of its terms.
///
/// Atom `k̄` is present iff a term of rank `≡ k (mod 4)` has a nonzero real
/// part; atom `ik̄` iff one has a nonzero imaginary part.
pub fn classify_by_rank(u: &Multivector) -> TypeSet {
    classify_with_threshold(u, 0.0)
}

/// Like [`classify_by_rank`], ignoring coefficient parts at most
/// `tol * max|u|` on the float backend. Exact multivectors ignore `tol`.
pub fn classify_with_tol(u: &Multivector, tol: f64) -> TypeSet {
    match u.backend() {
        Backend::Exact => classify_by_rank(u),
        Backend::Float => classify_with_threshold(u, tol * u.max_abs()),
    }
}

/// [`classify_with_tol`] at the backend's default tolerance.
pub fn classify(u: &Multivector) -> TypeSet {
    classify_with_tol(u, FLOAT_TOLERANCE)
}

fn classify_with_threshold(u: &Multivector, threshold: f64) -> TypeSet {
    let mut t = TypeSet::EMPTY;
    for (blade, c) in u.terms() {
        let main = MainType::of_rank(blade.rank());
        if present(&c.re, threshold) {
            t.insert(TypeAtom::real(main));
        }
        if present(&c.im, threshold) {
            t.insert(TypeAtom::imag(main));
        }
    }
    t
}

fn present(x: &Real, threshold: f64) -> bool {
    match x {
        Real::Exact(_) => !x.is_zero(),
        Real::Float(v) => v.abs() > threshold,
    }
}

/// Projection onto main type `k̄`:
/// `P_k(U) = (U + s1 U^ + s2 U~ + s3 U^~) / 4` with `s` the eigenvalues of the
/// three conjugations on `k̄`.
pub fn qtype_project(u: &Multivector, k: MainType) -> Multivector {
    let atom = TypeAtom::real(k);
    let mut acc = u.clone();
    for c in Conjugation::REAL {
        let term = u.conjugate(c).expect("real conjugations apply to every field");
        let term = if atom_sign(c, atom) < 0 { term.neg() } else { term };
        acc = acc.add(&term).expect("same space");
    }
    acc.scalar_mul(&Coeff::from_ratio(1, 4, u.backend())).expect("real scalar")
}

/// Classifies through the conjugation eigenspaces instead of ranks: project
/// onto each main type, then split real and imaginary parts with
/// `(P ± P-) / 2`.
pub fn classify_by_conjugation(u: &Multivector, tol: f64) -> TypeSet {
    let threshold = match u.backend() {
        Backend::Exact => 0.0,
        Backend::Float => tol * u.max_abs(),
    };
    let nonzero = |m: &Multivector| match m.backend() {
        Backend::Exact => !m.is_zero(),
        Backend::Float => m.max_abs() > threshold,
    };
    let mut t = TypeSet::EMPTY;
    for k in MainType::ALL {
        let p = qtype_project(u, k);
        match u.field() {
            Field::Real => {
                if nonzero(&p) {
                    t.insert(TypeAtom::real(k));
                }
            }
            Field::Complex => {
                let pc = p.complex_conjugate().expect("complex field");
                let re2 = p.add(&pc).expect("same space");
                let im2 = p.sub(&pc).expect("same space");
                if nonzero(&re2) {
                    t.insert(TypeAtom::real(k));
                }
                if nonzero(&im2) {
                    t.insert(TypeAtom::imag(k));
                }
            }
        }
    }
    t
}

/// Whether `u` lies in the subspace denoted by `t`.
///
/// Exact backend: `classify_by_rank(u) ⊆ t`. Float backend: every component
/// outside `t` is at most `tol * max|u|`.
pub fn member(u: &Multivector, t: TypeSet, tol: f64) -> bool {
    classify_with_tol(u, tol).is_subset(t)
}
