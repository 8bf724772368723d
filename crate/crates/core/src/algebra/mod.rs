//! Exact multivector arithmetic in `Cl(p,q)` over the reals or complexes.

mod blade;
mod coeff;
mod conjugation;
mod multivector;
mod signature;
mod text;

pub use blade::{blade_commutation_sign, blade_mul, Blade};
pub use coeff::{parse_unsigned_real, Backend, Coeff, Field, Real, FLOAT_TOLERANCE};
pub use conjugation::Conjugation;
pub use multivector::{Multivector, Space};
pub use signature::{Signature, MAX_GENERATORS};
pub use text::{format_mv, parse_mv, MultivectorJson, TermJson};

pub(crate) use coeff::parse_unsigned_rational;

/// Binomial coefficient `C(n, k)`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}
