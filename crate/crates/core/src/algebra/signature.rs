use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported number of generators; blades are stored in a `u64` mask.
pub const MAX_GENERATORS: usize = 63;

/// Signature `(p, q)` of a nondegenerate diagonal quadratic form.
///
/// Generators `1..=p` square to `+1`, generators `p+1..=p+q` square to `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawSignature", into = "RawSignature")]
pub struct Signature {
    p: usize,
    q: usize,
}

#[derive(Serialize, Deserialize)]
struct RawSignature {
    p: usize,
    q: usize,
}

impl TryFrom<RawSignature> for Signature {
    type Error = Error;
    fn try_from(raw: RawSignature) -> Result<Self> {
        Signature::new(raw.p, raw.q)
    }
}

impl From<Signature> for RawSignature {
    fn from(sig: Signature) -> Self {
        RawSignature { p: sig.p, q: sig.q }
    }
}

impl Signature {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        let n = p + q;
        if n == 0 {
            return Err(Error::InvalidSignature { p, q, reason: "p + q must be at least 1" });
        }
        if n > MAX_GENERATORS {
            return Err(Error::InvalidSignature { p, q, reason: "too many generators (max 63)" });
        }
        Ok(Signature { p, q })
    }

    pub fn p(self) -> usize {
        self.p
    }

    pub fn q(self) -> usize {
        self.q
    }

    pub fn n(self) -> usize {
        self.p + self.q
    }

    /// Diagonal entry of the metric for generator `a` (1-based).
    pub fn eta(self, a: usize) -> i8 {
        debug_assert!(a >= 1 && a <= self.n());
        if a <= self.p {
            1
        } else {
            -1
        }
    }

    /// Bit mask of the generators squaring to `-1`.
    pub(crate) fn negative_mask(self) -> u64 {
        let all = low_bits(self.n());
        all & !low_bits(self.p)
    }

    /// Bit mask with one bit per generator.
    pub fn full_mask(self) -> u64 {
        low_bits(self.n())
    }

    /// Every signature with `1 <= p + q <= max_n`, ordered by `n` then `p`.
    pub fn all_up_to(max_n: usize) -> Vec<Signature> {
        (1..=max_n)
            .flat_map(|n| (0..=n).rev().map(move |p| Signature { p, q: n - p }))
            .collect()
    }

    /// Every signature with exactly `n` generators.
    pub fn all_of(n: usize) -> Vec<Signature> {
        (0..=n).rev().map(|p| Signature { p, q: n - p }).collect()
    }
}

fn low_bits(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

impl FromStr for Signature {
    type Err = Error;

    /// Accepts `p,q` (the CLI form), optionally wrapped in parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (p, q) = t
            .split_once(',')
            .ok_or_else(|| Error::usage(format!("signature must be `p,q`, got `{s}`")))?;
        let parse = |x: &str| {
            x.trim()
                .parse::<usize>()
                .map_err(|_| Error::usage(format!("signature must be `p,q`, got `{s}`")))
        };
        Signature::new(parse(p)?, parse(q)?)
    }
}
