use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const REV: u8 = 0b001;
const GRI: u8 = 0b010;
const CONJ: u8 = 0b100;

/// The seven nontrivial conjugations generated by reversion (`~`), grade
/// involution (`^`) and complex conjugation (`-`).
///
/// The three generators are commuting involutions, so every composition is
/// identified by which of them it contains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Conjugation {
    /// `U~`
    Reversion,
    /// `U^`
    GradeInvolution,
    /// `U^~`
    GradeReversion,
    /// `U-`, complex field only
    Complex,
    /// `U‡ = (U~)-`, complex field only
    PseudoHermitian,
    /// `U^-`, complex field only
    GradeComplex,
    /// `U^‡`, complex field only
    GradePseudoHermitian,
}

impl Conjugation {
    pub const REAL: [Conjugation; 3] =
        [Conjugation::Reversion, Conjugation::GradeInvolution, Conjugation::GradeReversion];

    pub const ALL: [Conjugation; 7] = [
        Conjugation::Reversion,
        Conjugation::GradeInvolution,
        Conjugation::GradeReversion,
        Conjugation::Complex,
        Conjugation::PseudoHermitian,
        Conjugation::GradeComplex,
        Conjugation::GradePseudoHermitian,
    ];

    pub(crate) fn flags(self) -> u8 {
        match self {
            Conjugation::Reversion => REV,
            Conjugation::GradeInvolution => GRI,
            Conjugation::GradeReversion => GRI | REV,
            Conjugation::Complex => CONJ,
            Conjugation::PseudoHermitian => CONJ | REV,
            Conjugation::GradeComplex => GRI | CONJ,
            Conjugation::GradePseudoHermitian => GRI | CONJ | REV,
        }
    }

    /// Inverse of [`Conjugation::flags`]; `None` for the identity.
    pub(crate) fn from_flags(flags: u8) -> Option<Conjugation> {
        Conjugation::ALL.into_iter().find(|c| c.flags() == flags & 0b111)
    }

    /// `c1 ∘ c2`, or `None` when the composition is the identity.
    pub fn compose(self, other: Conjugation) -> Option<Conjugation> {
        Conjugation::from_flags(self.flags() ^ other.flags())
    }

    /// Reverses the order of factors (`(UV)* = V* U*`).
    pub fn is_anti_automorphism(self) -> bool {
        self.flags() & REV != 0
    }

    /// Conjugates scalar coefficients.
    pub fn is_antilinear(self) -> bool {
        self.flags() & CONJ != 0
    }

    pub fn requires_complex(self) -> bool {
        self.is_antilinear()
    }

    /// Eigenvalue on a rank-`k` blade with a real (`imaginary = false`) or
    /// purely imaginary coefficient.
    pub fn sign(self, rank: usize, imaginary: bool) -> i8 {
        let f = self.flags();
        let mut s = 1i8;
        if f & REV != 0 && (rank * rank.saturating_sub(1) / 2) % 2 == 1 {
            s = -s;
        }
        if f & GRI != 0 && rank % 2 == 1 {
            s = -s;
        }
        if f & CONJ != 0 && imaginary {
            s = -s;
        }
        s
    }

    /// Postfix notation, e.g. `^~`.
    pub fn symbol(self) -> &'static str {
        match self {
            Conjugation::Reversion => "~",
            Conjugation::GradeInvolution => "^",
            Conjugation::GradeReversion => "^~",
            Conjugation::Complex => "-",
            Conjugation::PseudoHermitian => "‡",
            Conjugation::GradeComplex => "^-",
            Conjugation::GradePseudoHermitian => "^‡",
        }
    }

    /// Nested call names used by the expression language, outermost first.
    pub fn call_names(self) -> &'static [&'static str] {
        match self {
            Conjugation::Reversion => &["rev"],
            Conjugation::GradeInvolution => &["gri"],
            Conjugation::GradeReversion => &["gri", "rev"],
            Conjugation::Complex => &["conj"],
            Conjugation::PseudoHermitian => &["phc"],
            Conjugation::GradeComplex => &["gri", "conj"],
            Conjugation::GradePseudoHermitian => &["gri", "phc"],
        }
    }

    pub fn from_call_name(name: &str) -> Option<Conjugation> {
        match name {
            "rev" => Some(Conjugation::Reversion),
            "gri" => Some(Conjugation::GradeInvolution),
            "conj" => Some(Conjugation::Complex),
            "phc" => Some(Conjugation::PseudoHermitian),
            _ => None,
        }
    }

    pub(crate) fn check_field(self, field: super::Field) -> Result<()> {
        if self.requires_complex() && field == super::Field::Real {
            return Err(Error::ComplexOnly { op: self.symbol() });
        }
        Ok(())
    }
}

impl fmt::Display for Conjugation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Conjugation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let c = match s {
            "~" | "rev" => Conjugation::Reversion,
            "^" | "gri" => Conjugation::GradeInvolution,
            "^~" | "~^" | "grirev" => Conjugation::GradeReversion,
            "-" | "conj" => Conjugation::Complex,
            "‡" | "phc" => Conjugation::PseudoHermitian,
            "^-" | "-^" | "griconj" => Conjugation::GradeComplex,
            "^‡" | "‡^" | "griphc" => Conjugation::GradePseudoHermitian,
            _ => return Err(Error::usage(format!("unknown conjugation `{s}`"))),
        };
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_round_trip() {
        for c in Conjugation::ALL {
            assert_eq!(Conjugation::from_flags(c.flags()), Some(c));
        }
        assert_eq!(Conjugation::from_flags(0), None);
    }

    #[test]
    fn composition_table() {
        use Conjugation::*;
        assert_eq!(Reversion.compose(Complex), Some(PseudoHermitian));
        assert_eq!(GradeInvolution.compose(Reversion), Some(GradeReversion));
        assert_eq!(PseudoHermitian.compose(PseudoHermitian), None);
        assert_eq!(GradeInvolution.compose(PseudoHermitian), Some(GradePseudoHermitian));
    }

    #[test]
    fn reversion_signs_by_rank() {
        let signs: Vec<i8> = (0..8).map(|k| Conjugation::Reversion.sign(k, false)).collect();
        assert_eq!(signs, vec![1, 1, -1, -1, 1, 1, -1, -1]);
    }
}
