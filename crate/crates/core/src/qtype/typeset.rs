use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::Field;
use crate::error::{Error, Result};

/// One of the four main quaternion types `0̄, 1̄, 2̄, 3̄`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MainType(u8);

impl MainType {
    pub const ALL: [MainType; 4] = [MainType(0), MainType(1), MainType(2), MainType(3)];

    pub fn new(k: u8) -> Option<MainType> {
        (k < 4).then_some(MainType(k))
    }

    pub fn of_rank(rank: usize) -> MainType {
        MainType((rank % 4) as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Ranks `k, k+4, k+8, ...` up to `n`.
    pub fn ranks(self, n: usize) -> impl Iterator<Item = usize> {
        (self.0 as usize..=n).step_by(4)
    }
}

impl fmt::Display for MainType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A main type together with a real/imaginary flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeAtom {
    pub main: MainType,
    pub imaginary: bool,
}

impl TypeAtom {
    pub fn real(main: MainType) -> TypeAtom {
        TypeAtom { main, imaginary: false }
    }

    pub fn imag(main: MainType) -> TypeAtom {
        TypeAtom { main, imaginary: true }
    }

    fn bit(self) -> u8 {
        1 << (self.main.0 + if self.imaginary { 4 } else { 0 })
    }
}

impl fmt::Display for TypeAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.imaginary {
            write!(f, "i{}", self.main)
        } else {
            write!(f, "{}", self.main)
        }
    }
}

/// A direct sum of atom subspaces. The empty set is the zero subspace.
///
/// Bits 0..4 hold the real atoms, bits 4..8 the imaginary ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TypeSet(u8);

impl TypeSet {
    pub const EMPTY: TypeSet = TypeSet(0);
    pub const REAL_ALL: TypeSet = TypeSet(0x0f);
    pub const COMPLEX_ALL: TypeSet = TypeSet(0xff);

    pub const fn from_bits(bits: u8) -> TypeSet {
        TypeSet(bits)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    /// Every atom of the field.
    pub fn full(field: Field) -> TypeSet {
        match field {
            Field::Real => TypeSet::REAL_ALL,
            Field::Complex => TypeSet::COMPLEX_ALL,
        }
    }

    pub fn atom(atom: TypeAtom) -> TypeSet {
        TypeSet(atom.bit())
    }

    pub fn main(k: MainType) -> TypeSet {
        TypeSet::atom(TypeAtom::real(k))
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, atom: TypeAtom) -> bool {
        self.0 & atom.bit() != 0
    }

    pub fn is_subset(self, other: TypeSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: TypeSet) -> TypeSet {
        TypeSet(self.0 | other.0)
    }

    pub fn intersection(self, other: TypeSet) -> TypeSet {
        TypeSet(self.0 & other.0)
    }

    pub fn insert(&mut self, atom: TypeAtom) {
        self.0 |= atom.bit();
    }

    /// Multiplication by `i`: swaps the real and imaginary atoms.
    pub fn times_i(self) -> TypeSet {
        TypeSet(self.0.rotate_left(4))
    }

    pub fn has_imaginary(self) -> bool {
        self.0 & 0xf0 != 0
    }

    /// Atoms in order `0, 1, 2, 3, i0, i1, i2, i3`.
    pub fn atoms(self) -> impl Iterator<Item = TypeAtom> {
        (0..8u8).filter(move |b| self.0 & (1 << b) != 0).map(|b| TypeAtom {
            main: MainType(b % 4),
            imaginary: b >= 4,
        })
    }

    /// The real main types and the imaginary main types present.
    fn digit_groups(self) -> (String, String) {
        let digits = |nibble: u8| (0..4).filter(|k| nibble & (1 << k) != 0).map(|k| k.to_string()).collect();
        (digits(self.0 & 0xf), digits(self.0 >> 4))
    }

    /// All 2^4 - 1 nonempty real type sets.
    pub fn all_real_nonempty() -> impl Iterator<Item = TypeSet> {
        (1..16u8).map(TypeSet)
    }
}

impl FromIterator<TypeAtom> for TypeSet {
    fn from_iter<I: IntoIterator<Item = TypeAtom>>(iter: I) -> Self {
        let mut t = TypeSet::EMPTY;
        for a in iter {
            t.insert(a);
        }
        t
    }
}

impl fmt::Display for TypeSet {
    /// `01`, `01+i23`, `i0123`, or `∅`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.digit_groups();
        match (re.is_empty(), im.is_empty()) {
            (true, true) => f.write_str("∅"),
            (false, true) => f.write_str(&re),
            (true, false) => write!(f, "i{im}"),
            (false, false) => write!(f, "{re}+i{im}"),
        }
    }
}

impl FromStr for TypeSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if matches!(s, "∅" | "0set" | "{}") {
            return Ok(TypeSet::EMPTY);
        }
        let bad = || Error::usage(format!("malformed type set `{s}` (e.g. 2, 01, 01+i23, i0123, ∅)"));
        let mut t = TypeSet::EMPTY;
        let parts: Vec<&str> = s.split('+').map(str::trim).collect();
        if parts.len() > 2 {
            return Err(bad());
        }
        for (idx, part) in parts.iter().enumerate() {
            let (imaginary, digits) = match part.strip_prefix('i') {
                Some(rest) => (true, rest),
                None if idx == 0 => (false, *part),
                None => return Err(bad()),
            };
            if digits.is_empty() {
                return Err(bad());
            }
            for ch in digits.chars() {
                let k = ch.to_digit(10).filter(|&k| k < 4).ok_or_else(bad)?;
                let main = MainType(k as u8);
                t.insert(if imaginary { TypeAtom::imag(main) } else { TypeAtom::real(main) });
            }
        }
        Ok(t)
    }
}

impl Serialize for TypeSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TypeSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
