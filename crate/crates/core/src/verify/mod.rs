//! Brute-force oracles.
//!
//! Everything here is deliberately slow and independent of the bit-mask
//! fast paths in [`crate::algebra`].

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{binomial, blade_mul, Blade, Multivector, Signature, Space};
use crate::error::{Error, Result};
use crate::qtype::{classify_by_rank, ClosureTables, MainType, TableOp, TypeAtom, TypeSet};

/// Largest `n` accepted by the exhaustive sweeps.
pub const MAX_SWEEP_N: usize = 8;

/// Product of two blades by literal manipulation of the generator list.
///
/// Concatenates the index lists, then repeatedly fixes the first adjacent
/// pair that is out of order: distinct generators anticommute (swap, flip
/// sign), equal generators contract to `eta(a)`.
pub fn naive_blade_product(a: Blade, b: Blade, sig: Signature) -> (i8, Blade) {
    let mut word: Vec<usize> = a.indices();
    word.extend(b.indices());
    let mut sign = 1i8;
    'outer: loop {
        for i in 0..word.len().saturating_sub(1) {
            let (x, y) = (word[i], word[i + 1]);
            if x == y {
                sign *= sig.eta(x);
                word.drain(i..i + 2);
                continue 'outer;
            }
            if x > y {
                word.swap(i, i + 1);
                sign = -sign;
                continue 'outer;
            }
        }
        break;
    }
    let blade = Blade::from_indices(&word).expect("normal form has distinct indices");
    (sign, blade)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub signature: Signature,
    pub lhs: Vec<usize>,
    pub rhs: Vec<usize>,
    pub fast: (i8, Vec<usize>),
    pub naive: (i8, Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub max_n: usize,
    pub signatures: usize,
    pub pairs_checked: u64,
    pub discrepancies: Vec<Discrepancy>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

/// Compares [`blade_mul`] with [`naive_blade_product`] on every blade pair
/// of every signature with `n <= max_n`.
pub fn oracle_sweep(max_n: usize) -> Result<OracleReport> {
    check_bound(max_n)?;
    oracle_sweep_with(max_n, blade_mul)
}

/// [`oracle_sweep`] against an arbitrary fast implementation.
pub fn oracle_sweep_with<F>(max_n: usize, fast: F) -> Result<OracleReport>
where
    F: Fn(Blade, Blade, Signature) -> (i8, Blade) + Sync,
{
    check_bound(max_n)?;
    let sigs = Signature::all_up_to(max_n);
    let per_sig: Vec<(u64, Vec<Discrepancy>)> = sigs
        .par_iter()
        .map(|&sig| {
            let blades: Vec<Blade> = Blade::all(sig).collect();
            let mut found = Vec::new();
            for &a in &blades {
                for &b in &blades {
                    let f = fast(a, b, sig);
                    let slow = naive_blade_product(a, b, sig);
                    if f != slow {
                        found.push(Discrepancy {
                            signature: sig,
                            lhs: a.indices(),
                            rhs: b.indices(),
                            fast: (f.0, f.1.indices()),
                            naive: (slow.0, slow.1.indices()),
                        });
                    }
                }
            }
            ((blades.len() * blades.len()) as u64, found)
        })
        .collect();
    Ok(OracleReport {
        max_n,
        signatures: sigs.len(),
        pairs_checked: per_sig.iter().map(|(c, _)| c).sum(),
        discrepancies: per_sig.into_iter().flat_map(|(_, d)| d).collect(),
    })
}

fn check_bound(max_n: usize) -> Result<()> {
    if max_n == 0 || max_n > MAX_SWEEP_N {
        return Err(Error::usage(format!("max-n must be in 1..={MAX_SWEEP_N}, got {max_n}")));
    }
    Ok(())
}

/// A blade pair whose bracket lands in a given atom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub signature: Signature,
    pub lhs: String,
    pub rhs: String,
    pub result: TypeSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub row: usize,
    pub col: usize,
    pub expected: TypeSet,
    pub derived: TypeSet,
    /// Blade pair producing an atom absent from the expected entry, if any.
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub op: TableOp,
    pub max_n: usize,
    pub derived: [[TypeSet; 4]; 4],
    /// Entries whose derived type falls outside the table.
    pub mismatches: Vec<Mismatch>,
    /// Entries no blade pair reaches at these dimensions (`(row, col)`).
    pub unrealized: Vec<(usize, usize)>,
    pub signatures: Vec<Signature>,
}

impl TableReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Per-entry derived type and the first witness for each main type.
type Acc = [[(TypeSet, Vec<Option<Witness>>); 4]; 4];

/// Derives both atom tables by computing `[u,v]` and `{u,v}` exactly for every
/// pair of basis blades over all signatures with `n <= max_n`, classifying the
/// results by rank, and comparing with `tables`.
pub fn derive_tables(max_n: usize, tables: &ClosureTables) -> Result<(TableReport, TableReport)> {
    check_bound(max_n)?;
    let sigs = Signature::all_up_to(max_n);
    let empty = || -> Acc { std::array::from_fn(|_| std::array::from_fn(|_| (TypeSet::EMPTY, vec![None; 4]))) };

    let per_sig: Vec<(Acc, Acc)> = sigs
        .par_iter()
        .map(|&sig| {
            let space = Space::real_exact(sig);
            let mut comm = empty();
            let mut anti = empty();
            let blades: Vec<(Blade, Multivector)> =
                Blade::all(sig).map(|b| (b, Multivector::blade(space, b).expect("valid blade"))).collect();
            for (a, u) in &blades {
                for (b, v) in &blades {
                    let ka = a.rank() % 4;
                    let kb = b.rank() % 4;
                    for (acc, result) in [
                        (&mut comm, u.commutator(v).expect("same space")),
                        (&mut anti, u.anticommutator(v).expect("same space")),
                    ] {
                        let t = classify_by_rank(&result);
                        let entry = &mut acc[ka][kb];
                        for atom in t.atoms() {
                            let slot = &mut entry.1[atom.main.index()];
                            if slot.is_none() {
                                *slot = Some(Witness {
                                    signature: sig,
                                    lhs: a.format_for(sig),
                                    rhs: b.format_for(sig),
                                    result: t,
                                });
                            }
                        }
                        entry.0 = entry.0.union(t);
                    }
                }
            }
            (comm, anti)
        })
        .collect();

    let mut comm = empty();
    let mut anti = empty();
    for (c, a) in per_sig {
        merge(&mut comm, c);
        merge(&mut anti, a);
    }
    Ok((
        table_report(TableOp::Commutator, max_n, &sigs, comm, tables),
        table_report(TableOp::Anticommutator, max_n, &sigs, anti, tables),
    ))
}

fn merge(into: &mut Acc, from: Acc) {
    for (row_into, row_from) in into.iter_mut().zip(from) {
        for (e_into, e_from) in row_into.iter_mut().zip(row_from) {
            e_into.0 = e_into.0.union(e_from.0);
            for (w_into, w_from) in e_into.1.iter_mut().zip(e_from.1) {
                if w_into.is_none() {
                    *w_into = w_from;
                }
            }
        }
    }
}

fn table_report(
    op: TableOp,
    max_n: usize,
    sigs: &[Signature],
    acc: Acc,
    tables: &ClosureTables,
) -> TableReport {
    let table = tables.get(op);
    let mut derived = [[TypeSet::EMPTY; 4]; 4];
    let mut mismatches = Vec::new();
    let mut unrealized = Vec::new();
    for (row, acc_row) in acc.into_iter().enumerate() {
        for (col, (set, witnesses)) in acc_row.into_iter().enumerate() {
            derived[row][col] = set;
            let expected = MainType::new(table[row][col]).map_or(TypeSet::EMPTY, TypeSet::main);
            if set.is_empty() {
                unrealized.push((row, col));
            } else if !set.is_subset(expected) {
                let witness = set
                    .atoms()
                    .find(|a| !expected.contains(*a))
                    .and_then(|a: TypeAtom| witnesses[a.main.index()].clone());
                mismatches.push(Mismatch { row, col, expected, derived: set, witness });
            }
        }
    }
    TableReport { op, max_n, derived, mismatches, unrealized, signatures: sigs.to_vec() }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionReport {
    pub signature: Signature,
    /// Blade counts per rank `0..=n`.
    pub rank_dims: Vec<u64>,
    /// Blade counts per main type `0̄..3̄`.
    pub type_dims: [u64; 4],
    pub even: u64,
    pub odd: u64,
    pub total: u64,
    pub problems: Vec<String>,
}

impl DimensionReport {
    pub fn passed(&self) -> bool {
        self.problems.is_empty()
    }
}

/// Counts basis blades by rank, main type and parity, and checks the counts
/// against `C(n,k)`, `Σ_{r ≡ k (4)} C(n,r)`, `2^(n-1)` and `2^n`.
pub fn dimension_audit(sig: Signature) -> DimensionReport {
    let n = sig.n();
    let mut rank_dims = vec![0u64; n + 1];
    let mut type_dims = [0u64; 4];
    let mut even = 0;
    let mut odd = 0;
    let mut total = 0;
    for b in Blade::all(sig) {
        let r = b.rank();
        rank_dims[r] += 1;
        type_dims[r % 4] += 1;
        if r % 2 == 0 {
            even += 1;
        } else {
            odd += 1;
        }
        total += 1;
    }
    let mut problems = Vec::new();
    for (k, &d) in rank_dims.iter().enumerate() {
        if d != binomial(n, k) {
            problems.push(format!("rank {k}: {d} blades, expected C({n},{k}) = {}", binomial(n, k)));
        }
    }
    for k in MainType::ALL {
        let expected: u64 = k.ranks(n).map(|r| binomial(n, r)).sum();
        if type_dims[k.index()] != expected {
            problems.push(format!("type {k}: {} blades, expected {expected}", type_dims[k.index()]));
        }
    }
    let half = 1u64 << (n - 1);
    if even != half || odd != half {
        problems.push(format!("even/odd = {even}/{odd}, expected {half}/{half}"));
    }
    if total != 1u64 << n {
        problems.push(format!("total {total}, expected {}", 1u64 << n));
    }
    DimensionReport { signature: sig, rank_dims, type_dims, even, odd, total, problems }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub max_n: usize,
    pub commutator: TableReport,
    pub anticommutator: TableReport,
    pub oracle: OracleReport,
    pub dimensions: Vec<DimensionReport>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.commutator.passed()
            && self.anticommutator.passed()
            && self.oracle.passed()
            && self.dimensions.iter().all(DimensionReport::passed)
    }
}

/// Table derivation, product oracle and dimension audits up to `max_n`.
pub fn selftest(max_n: usize, tables: &ClosureTables) -> Result<SelftestReport> {
    let (commutator, anticommutator) = derive_tables(max_n, tables)?;
    let oracle = oracle_sweep(max_n)?;
    let dimensions = Signature::all_up_to(max_n).into_iter().map(dimension_audit).collect();
    Ok(SelftestReport { max_n, commutator, anticommutator, oracle, dimensions })
}
