use std::fmt;

use super::Signature;

/// A canonical basis element `e^{a1...ak}` with `a1 < ... < ak`.
///
/// Generator `a` (1-based) is stored as bit `a - 1`; the empty mask is the
/// identity `e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Blade(u64);

impl Blade {
    pub const IDENTITY: Blade = Blade(0);

    pub const fn from_mask(mask: u64) -> Blade {
        Blade(mask)
    }

    /// Builds a blade from 1-based generator indices; `None` if an index is
    /// zero, exceeds 63, or repeats. Order does not matter here.
    pub fn from_indices(indices: &[usize]) -> Option<Blade> {
        let mut mask = 0u64;
        for &a in indices {
            if a == 0 || a > 63 {
                return None;
            }
            let bit = 1u64 << (a - 1);
            if mask & bit != 0 {
                return None;
            }
            mask |= bit;
        }
        Some(Blade(mask))
    }

    /// Single generator `e^a`.
    pub fn generator(a: usize) -> Blade {
        debug_assert!((1..=63).contains(&a));
        Blade(1u64 << (a - 1))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn rank(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_identity(self) -> bool {
        self.0 == 0
    }

    /// Increasing 1-based generator indices.
    pub fn indices(self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.rank());
        let mut m = self.0;
        while m != 0 {
            let tz = m.trailing_zeros() as usize;
            out.push(tz + 1);
            m &= m - 1;
        }
        out
    }

    pub fn fits(self, sig: Signature) -> bool {
        self.0 & !sig.full_mask() == 0
    }

    /// Key ordering blades by rank, then lexicographically by index list.
    pub fn canonical_key(self) -> (usize, Vec<usize>) {
        (self.rank(), self.indices())
    }

    /// All `2^n` blades of the signature, in mask order.
    pub fn all(sig: Signature) -> impl Iterator<Item = Blade> {
        (0..=sig.full_mask()).map(Blade)
    }
}

/// Product of two basis blades: `a * b = sign * result`.
///
/// The result is the symmetric difference of the index sets. The sign is the
/// parity of the transpositions needed to sort the concatenated index list,
/// times `eta(c)` for every index `c` the two blades share.
pub fn blade_mul(a: Blade, b: Blade, sig: Signature) -> (i8, Blade) {
    let mut swaps = 0u32;
    let mut shifted = a.0 >> 1;
    while shifted != 0 {
        swaps += (shifted & b.0).count_ones();
        shifted >>= 1;
    }
    swaps += (a.0 & b.0 & sig.negative_mask()).count_ones();
    let sign = if swaps.is_multiple_of(2) { 1 } else { -1 };
    (sign, Blade(a.0 ^ b.0))
}

/// `+1` if the blades commute, `-1` if they anticommute.
///
/// Two blades of ranks `k`, `l` sharing `s` generators satisfy
/// `ab = (-1)^(kl - s) ba`.
pub fn blade_commutation_sign(a: Blade, b: Blade) -> i8 {
    let k = a.rank();
    let l = b.rank();
    let s = (a.0 & b.0).count_ones() as usize;
    if (k * l - s).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl Blade {
    /// Text form for an algebra with `sig`: digit form (`e12`) when `n <= 9`,
    /// brace form (`e{1,12}`) otherwise.
    pub fn format_for(self, sig: Signature) -> String {
        if sig.n() <= 9 {
            self.to_string()
        } else if self.is_identity() {
            "e".to_string()
        } else {
            let parts: Vec<String> = self.indices().iter().map(|a| a.to_string()).collect();
            format!("e{{{}}}", parts.join(","))
        }
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx = self.indices();
        if idx.is_empty() {
            return write!(f, "e");
        }
        if idx.iter().all(|&a| a <= 9) {
            write!(f, "e")?;
            for a in idx {
                write!(f, "{a}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = idx.iter().map(|a| a.to_string()).collect();
            write!(f, "e{{{}}}", parts.join(","))
        }
    }
}
