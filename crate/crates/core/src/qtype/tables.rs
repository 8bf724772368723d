use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::{MainType, TypeAtom, TypeSet};
use crate::algebra::{blade_commutation_sign, blade_mul, Blade, Signature};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableOp {
    Commutator,
    Anticommutator,
}

impl fmt::Display for TableOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableOp::Commutator => "commutator",
            TableOp::Anticommutator => "anticommutator",
        })
    }
}

/// Single-atom closure tables: `table[k][l]` is the main type of `[k̄, l̄]`
/// (resp. `{k̄, l̄}`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureTables {
    pub commutator: [[u8; 4]; 4],
    pub anticommutator: [[u8; 4]; 4],
}

pub const HARD_CODED: ClosureTables = ClosureTables {
    // [k,k] -> 2; [k,2] -> k; [0,1] -> 3; [0,3] -> 1; [1,3] -> 0
    commutator: [
        [2, 3, 0, 1],
        [3, 2, 1, 0],
        [0, 1, 2, 3],
        [1, 0, 3, 2],
    ],
    // {k,k} -> 0; {k,0} -> k; {1,2} -> 3; {1,3} -> 2; {2,3} -> 1
    anticommutator: [
        [0, 1, 2, 3],
        [1, 0, 3, 2],
        [2, 3, 0, 1],
        [3, 2, 1, 0],
    ],
};

impl ClosureTables {
    /// The hard-coded tables, re-derived from blade products at `n = 5` the
    /// first time they are requested.
    ///
    /// # Panics
    /// If the derivation disagrees with the hard-coded entries.
    pub fn standard() -> &'static ClosureTables {
        static CHECKED: OnceLock<ClosureTables> = OnceLock::new();
        CHECKED.get_or_init(|| {
            let derived = derive_single_atom_tables(&Signature::all_of(5));
            for op in [TableOp::Commutator, TableOp::Anticommutator] {
                for k in 0..4 {
                    for l in 0..4 {
                        let expected = TypeSet::main(MainType::new(HARD_CODED.get(op)[k][l]).unwrap());
                        let got = derived.get(op)[k][l];
                        assert_eq!(got, expected, "{op} table entry ({k},{l}) disagrees with blade products");
                    }
                }
            }
            HARD_CODED
        })
    }

    pub fn get(&self, op: TableOp) -> &[[u8; 4]; 4] {
        match op {
            TableOp::Commutator => &self.commutator,
            TableOp::Anticommutator => &self.anticommutator,
        }
    }

    pub fn get_mut(&mut self, op: TableOp) -> &mut [[u8; 4]; 4] {
        match op {
            TableOp::Commutator => &mut self.commutator,
            TableOp::Anticommutator => &mut self.anticommutator,
        }
    }

    /// Lifts the single-atom table to type sets by bilinearity; imaginary
    /// flags combine by XOR.
    pub fn apply(&self, op: TableOp, a: TypeSet, b: TypeSet) -> TypeSet {
        let table = self.get(op);
        let mut out = TypeSet::EMPTY;
        for x in a.atoms() {
            for y in b.atoms() {
                let main = MainType::new(table[x.main.index()][y.main.index()]).expect("table entry < 4");
                out.insert(TypeAtom { main, imaginary: x.imaginary ^ y.imaginary });
            }
        }
        out
    }

    pub fn commutator_type(&self, a: TypeSet, b: TypeSet) -> TypeSet {
        self.apply(TableOp::Commutator, a, b)
    }

    pub fn anticommutator_type(&self, a: TypeSet, b: TypeSet) -> TypeSet {
        self.apply(TableOp::Anticommutator, a, b)
    }

    /// `UV = ([U,V] + {U,V}) / 2`.
    pub fn product_type(&self, a: TypeSet, b: TypeSet) -> TypeSet {
        self.commutator_type(a, b).union(self.anticommutator_type(a, b))
    }
}

pub fn commutator_type(a: TypeSet, b: TypeSet) -> TypeSet {
    ClosureTables::standard().commutator_type(a, b)
}

pub fn anticommutator_type(a: TypeSet, b: TypeSet) -> TypeSet {
    ClosureTables::standard().anticommutator_type(a, b)
}

pub fn product_type(a: TypeSet, b: TypeSet) -> TypeSet {
    ClosureTables::standard().product_type(a, b)
}

/// Derived tables indexed like [`ClosureTables`], holding the set of main
/// types observed for each pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DerivedTables {
    pub commutator: [[TypeSet; 4]; 4],
    pub anticommutator: [[TypeSet; 4]; 4],
}

impl DerivedTables {
    pub fn get(&self, op: TableOp) -> &[[TypeSet; 4]; 4] {
        match op {
            TableOp::Commutator => &self.commutator,
            TableOp::Anticommutator => &self.anticommutator,
        }
    }
}

/// Types of every nonzero blade-pair commutator and anticommutator, using
/// only blade commutation signs: `[a,b]` is nonzero exactly when `a`, `b`
/// anticommute, `{a,b}` exactly when they commute, and both are multiples of
/// the blade `ab`.
pub fn derive_single_atom_tables(signatures: &[Signature]) -> DerivedTables {
    let mut out = DerivedTables {
        commutator: [[TypeSet::EMPTY; 4]; 4],
        anticommutator: [[TypeSet::EMPTY; 4]; 4],
    };
    for &sig in signatures {
        for a in Blade::all(sig) {
            for b in Blade::all(sig) {
                let (_, ab) = blade_mul(a, b, sig);
                let ka = a.rank() % 4;
                let kb = b.rank() % 4;
                let atom = TypeAtom::real(MainType::of_rank(ab.rank()));
                if blade_commutation_sign(a, b) < 0 {
                    out.commutator[ka][kb].insert(atom);
                } else {
                    out.anticommutator[ka][kb].insert(atom);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ts(s: &str) -> TypeSet {
        s.parse().unwrap()
    }

    #[test]
    fn standard_tables_pass_self_check() {
        assert_eq!(*ClosureTables::standard(), HARD_CODED);
    }

    #[test]
    fn commutator_examples() {
        assert_eq!(commutator_type(ts("2"), ts("2")), ts("2"));
        assert_eq!(commutator_type(ts("0"), ts("1")), ts("3"));
        assert_eq!(commutator_type(ts("01"), ts("2")), ts("01"));
        assert_eq!(commutator_type(ts("i1"), ts("3")), ts("i0"));
        assert_eq!(commutator_type(ts("∅"), ts("0123")), ts("∅"));
    }

    #[test]
    fn anticommutator_examples() {
        assert_eq!(anticommutator_type(ts("1"), ts("3")), ts("2"));
        for k in ["0", "1", "2", "3"] {
            assert_eq!(anticommutator_type(ts(k), ts("0")), ts(k));
            assert_eq!(anticommutator_type(ts(k), ts(k)), ts("0"));
        }
        assert_eq!(anticommutator_type(ts("03"), ts("0")), ts("03"));
        assert_eq!(anticommutator_type(ts("i2"), ts("i3")), ts("1"));
    }

    #[test]
    fn product_examples() {
        assert_eq!(product_type(ts("1"), ts("1")), ts("02"));
        assert_eq!(product_type(ts("0"), ts("0")), ts("02"));
        assert_eq!(product_type(ts("0"), ts("2")), ts("02"));
        assert_eq!(product_type(ts("∅"), ts("01")), ts("∅"));
    }

    #[test]
    fn tables_are_symmetric() {
        for k in 0..4 {
            for l in 0..4 {
                assert_eq!(HARD_CODED.commutator[k][l], HARD_CODED.commutator[l][k]);
                assert_eq!(HARD_CODED.anticommutator[k][l], HARD_CODED.anticommutator[l][k]);
            }
        }
    }
}
