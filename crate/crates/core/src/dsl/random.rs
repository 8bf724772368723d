use std::collections::HashSet;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use crate::algebra::{binomial, Blade, Coeff, Field, Multivector, Real, Space};
use crate::error::{Error, Result};
use crate::qtype::{MainType, TypeAtom, TypeSet};

/// Ranks with at most this many blades are enumerated blade by blade.
const ENUMERATE_LIMIT: u64 = 1 << 20;
/// Refuse draws whose expected size would exhaust memory.
const MAX_EXPECTED_TERMS: f64 = (1u64 << 24) as f64;

/// Sampling density used when none is given.
pub fn default_density(n: usize) -> f64 {
    if n <= 10 {
        1.0
    } else {
        0.002
    }
}

/// Random element of the subspace `t`, deterministic in `seed`.
///
/// Each blade of a rank `r` with `r̄` or `ir̄` in `t` is kept with probability
/// `density`; kept blades get a random nonzero rational `±a/b` (`a ≤ 9`,
/// `b ≤ 4`) as real part if `r̄ ∈ t` and as imaginary part if `ir̄ ∈ t`.
pub fn random_instance(t: TypeSet, space: Space, seed: u64, density: f64) -> Result<Multivector> {
    if !(density > 0.0 && density <= 1.0) {
        return Err(Error::usage(format!("density must lie in (0, 1], got {density}")));
    }
    if space.field == Field::Real && t.has_imaginary() {
        return Err(Error::ComplexOnly { op: "an imaginary type atom" });
    }
    let n = space.n();
    let ranks: Vec<(usize, bool, bool)> = (0..=n)
        .filter_map(|r| {
            let k = MainType::of_rank(r);
            let re = t.contains(TypeAtom::real(k));
            let im = t.contains(TypeAtom::imag(k));
            (re || im).then_some((r, re, im))
        })
        .collect();
    let expected: f64 = ranks.iter().map(|&(r, ..)| binomial(n, r) as f64 * density).sum();
    if expected > MAX_EXPECTED_TERMS {
        return Err(Error::usage(format!("about {expected:.0} expected terms; lower the density")));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut terms = Vec::new();
    for (r, re, im) in ranks {
        for blade in pick_blades(&mut rng, n, r, density) {
            let c = Coeff::new(part(&mut rng, re, space), part(&mut rng, im, space));
            terms.push((blade, c));
        }
    }
    Multivector::from_terms(space, terms)
}

fn part(rng: &mut ChaCha8Rng, present: bool, space: Space) -> Real {
    if !present {
        return Real::zero(space.backend);
    }
    let num = rng.random_range(1..=9) * if rng.random_bool(0.5) { 1 } else { -1 };
    Real::from_ratio(num, rng.random_range(1..=4), space.backend)
}

fn pick_blades(rng: &mut ChaCha8Rng, n: usize, r: usize, density: f64) -> Vec<Blade> {
    let count = binomial(n, r);
    if density >= 1.0 || count <= ENUMERATE_LIMIT {
        return subsets(n, r).filter(|_| density >= 1.0 || rng.random_bool(density)).map(Blade::from_mask).collect();
    }
    let k = Binomial::new(count, density).expect("density in (0,1]").sample(rng);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    while (out.len() as u64) < k {
        let mask = index::sample(rng, n, r).iter().fold(0u64, |m, i| m | 1 << i);
        if seen.insert(mask) {
            out.push(Blade::from_mask(mask));
        }
    }
    out
}

/// All `r`-element subsets of `{0..n}` as bitmasks, in increasing order.
fn subsets(n: usize, r: usize) -> impl Iterator<Item = u64> {
    let limit = 1u128 << n;
    let mut next = Some((1u128 << r) - 1).filter(|&m| m < limit);
    std::iter::from_fn(move || {
        let x = next?;
        next = if x == 0 {
            None
        } else {
            let c = x & x.wrapping_neg();
            let y = x + c;
            Some((((x ^ y) >> 2) / c) | y).filter(|&m| m < limit)
        };
        Some(x as u64)
    })
}
