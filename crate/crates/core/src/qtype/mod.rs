//! Quaternion types.
//!
//! A main type `k̄` (k = 0..3) is the sum of the rank subspaces with rank
//! `≡ k (mod 4)`; equivalently the joint eigenspace of grade involution and
//! reversion with eigenvalues `(-1)^k` and `(-1)^(k(k-1)/2)`. Over the complex
//! field each main type splits into a real atom `k̄` and an imaginary atom `ik̄`.

mod classify;
mod tables;
mod typeset;

pub use classify::{
    classify, classify_by_conjugation, classify_by_rank, classify_with_tol, member, qtype_project,
};
pub use tables::{
    anticommutator_type, commutator_type, derive_single_atom_tables, product_type, ClosureTables, DerivedTables,
    TableOp, HARD_CODED,
};
pub use typeset::{MainType, TypeAtom, TypeSet};

use crate::algebra::{Conjugation, Field};
use crate::error::Result;

/// Eigenvalue of a conjugation on every atom of the field.
pub fn conjugation_action(op: Conjugation, field: Field) -> Result<Vec<(TypeAtom, i8)>> {
    op.check_field(field)?;
    Ok(TypeSet::full(field).atoms().map(|a| (a, atom_sign(op, a))).collect())
}

pub(crate) fn atom_sign(op: Conjugation, atom: TypeAtom) -> i8 {
    op.sign(atom.main.index(), atom.imaginary)
}

/// Atoms on which `op` acts as multiplication by `sign`.
pub fn eigenspace(op: Conjugation, sign: i8, field: Field) -> Result<TypeSet> {
    Ok(conjugation_action(op, field)?
        .into_iter()
        .filter(|(_, s)| *s == sign)
        .map(|(a, _)| a)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use Conjugation::*;

    fn ts(s: &str) -> TypeSet {
        s.parse().unwrap()
    }

    fn signs(op: Conjugation, field: Field) -> Vec<i8> {
        conjugation_action(op, field).unwrap().into_iter().map(|(_, s)| s).collect()
    }

    #[test]
    fn real_sign_tables() {
        assert_eq!(signs(Reversion, Field::Real), vec![1, 1, -1, -1]);
        assert_eq!(signs(GradeInvolution, Field::Real), vec![1, -1, 1, -1]);
        assert_eq!(signs(GradeReversion, Field::Real), vec![1, -1, -1, 1]);
        assert!(conjugation_action(Complex, Field::Real).is_err());
    }

    #[test]
    fn complex_sign_tables() {
        // atom order: 0, 1, 2, 3, i0, i1, i2, i3
        assert_eq!(signs(Complex, Field::Complex), vec![1, 1, 1, 1, -1, -1, -1, -1]);
        assert_eq!(signs(PseudoHermitian, Field::Complex), vec![1, 1, -1, -1, -1, -1, 1, 1]);
        assert_eq!(signs(GradeReversion, Field::Complex), vec![1, -1, -1, 1, 1, -1, -1, 1]);
        assert_eq!(signs(GradeComplex, Field::Complex), vec![1, -1, 1, -1, -1, 1, -1, 1]);
        assert_eq!(signs(GradePseudoHermitian, Field::Complex), vec![1, -1, -1, 1, -1, 1, 1, -1]);
    }

    #[test]
    fn real_eigenspaces() {
        let r = Field::Real;
        assert_eq!(eigenspace(Reversion, 1, r).unwrap(), ts("01"));
        assert_eq!(eigenspace(Reversion, -1, r).unwrap(), ts("23"));
        assert_eq!(eigenspace(GradeInvolution, 1, r).unwrap(), ts("02"));
        assert_eq!(eigenspace(GradeInvolution, -1, r).unwrap(), ts("13"));
        assert_eq!(eigenspace(GradeReversion, 1, r).unwrap(), ts("03"));
        assert_eq!(eigenspace(GradeReversion, -1, r).unwrap(), ts("12"));
    }

    #[test]
    fn complex_eigenspaces() {
        let c = Field::Complex;
        let cases = [
            (Reversion, "01+i01", "23+i23"),
            (GradeInvolution, "02+i02", "13+i13"),
            (Complex, "0123", "i0123"),
            (PseudoHermitian, "01+i23", "23+i01"),
            (GradeReversion, "03+i03", "12+i12"),
            (GradeComplex, "02+i13", "13+i02"),
            (GradePseudoHermitian, "03+i12", "12+i03"),
        ];
        for (op, plus, minus) in cases {
            assert_eq!(eigenspace(op, 1, c).unwrap(), ts(plus), "{op} +1");
            assert_eq!(eigenspace(op, -1, c).unwrap(), ts(minus), "{op} -1");
        }
    }
}
