use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default relative tolerance for the float backend.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Field::Real => "real",
            Field::Complex => "complex",
        })
    }
}

impl FromStr for Field {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "real" | "R" => Ok(Field::Real),
            "complex" | "C" => Ok(Field::Complex),
            _ => Err(Error::usage(format!("unknown field `{s}` (expected real|complex)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Exact => "exact",
            Backend::Float => "float",
        })
    }
}

impl FromStr for Backend {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Backend::Exact),
            "float" => Ok(Backend::Float),
            _ => Err(Error::usage(format!("unknown backend `{s}` (expected exact|float)"))),
        }
    }
}

/// A real number on one of the two backends.
#[derive(Debug, Clone, PartialEq)]
pub enum Real {
    Exact(BigRational),
    Float(f64),
}

impl Real {
    pub fn zero(backend: Backend) -> Real {
        match backend {
            Backend::Exact => Real::Exact(BigRational::zero()),
            Backend::Float => Real::Float(0.0),
        }
    }

    pub fn from_ratio(num: i64, den: i64, backend: Backend) -> Real {
        match backend {
            Backend::Exact => Real::Exact(BigRational::new(BigInt::from(num), BigInt::from(den))),
            Backend::Float => Real::Float(num as f64 / den as f64),
        }
    }

    pub fn from_rational(r: &BigRational, backend: Backend) -> Real {
        match backend {
            Backend::Exact => Real::Exact(r.clone()),
            Backend::Float => Real::Float(r.to_f64().unwrap_or(f64::NAN)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Real::Exact(r) => r.is_zero(),
            Real::Float(x) => *x == 0.0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Real::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Real::Float(x) => *x,
        }
    }

    pub fn abs_f64(&self) -> f64 {
        self.to_f64().abs()
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Real::Exact(r) => r.is_negative(),
            Real::Float(x) => *x < 0.0,
        }
    }

    fn is_one(&self) -> bool {
        match self {
            Real::Exact(r) => r.is_one(),
            Real::Float(x) => *x == 1.0,
        }
    }

    fn scale_int(&self, k: i64) -> Real {
        match self {
            Real::Exact(r) => Real::Exact(r * BigInt::from(k)),
            Real::Float(x) => Real::Float(x * k as f64),
        }
    }
}

fn lift(a: &Real, b: &Real) -> (Real, Real) {
    match (a, b) {
        (Real::Float(_), Real::Exact(r)) => (a.clone(), Real::Float(r.to_f64().unwrap_or(f64::NAN))),
        (Real::Exact(r), Real::Float(_)) => (Real::Float(r.to_f64().unwrap_or(f64::NAN)), b.clone()),
        _ => (a.clone(), b.clone()),
    }
}

macro_rules! real_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl<'a> $trait<&'a Real> for &'a Real {
            type Output = Real;
            fn $method(self, rhs: &'a Real) -> Real {
                match (self, rhs) {
                    (Real::Exact(a), Real::Exact(b)) => Real::Exact(a $op b),
                    (Real::Float(a), Real::Float(b)) => Real::Float(a $op b),
                    _ => {
                        let (a, b) = lift(self, rhs);
                        &a $op &b
                    }
                }
            }
        }
    };
}

real_binop!(Add, add, +);
real_binop!(Sub, sub, -);
real_binop!(Mul, mul, *);

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        match self {
            Real::Exact(a) => Real::Exact(-a),
            Real::Float(a) => Real::Float(-a),
        }
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Exact(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Real::Float(x) => write!(f, "{x}"),
        }
    }
}

/// Parses `integer`, `integer/integer` or a plain decimal `123.456`
/// (no sign, no exponent) onto the requested backend.
pub fn parse_unsigned_real(text: &str, backend: Backend) -> Option<Real> {
    let exact = parse_unsigned_rational(text)?;
    Some(match backend {
        Backend::Exact => Real::Exact(exact),
        Backend::Float => {
            if text.contains('/') {
                Real::Float(exact.to_f64()?)
            } else {
                Real::Float(text.parse().ok()?)
            }
        }
    })
}

pub(crate) fn parse_unsigned_rational(text: &str) -> Option<BigRational> {
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|c| c.is_ascii_digit());
    if let Some((n, d)) = text.split_once('/') {
        if !digits(n) || !digits(d) {
            return None;
        }
        let den: BigInt = d.parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(BigRational::new(n.parse().ok()?, den));
    }
    if let Some((int, frac)) = text.split_once('.') {
        if !digits(int) || !digits(frac) {
            return None;
        }
        let num: BigInt = format!("{int}{frac}").parse().ok()?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        return Some(BigRational::new(num, den));
    }
    if !digits(text) {
        return None;
    }
    Some(BigRational::from_integer(text.parse().ok()?))
}

/// A scalar coefficient `re + i im`. Real-field multivectors keep `im = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Coeff {
    pub re: Real,
    pub im: Real,
}

impl Coeff {
    pub fn zero(backend: Backend) -> Coeff {
        Coeff { re: Real::zero(backend), im: Real::zero(backend) }
    }

    pub fn real(re: Real) -> Coeff {
        let im = match re {
            Real::Exact(_) => Real::zero(Backend::Exact),
            Real::Float(_) => Real::zero(Backend::Float),
        };
        Coeff { re, im }
    }

    pub fn new(re: Real, im: Real) -> Coeff {
        Coeff { re, im }
    }

    pub fn from_int(k: i64, backend: Backend) -> Coeff {
        Coeff::real(Real::from_ratio(k, 1, backend))
    }

    pub fn from_ratio(num: i64, den: i64, backend: Backend) -> Coeff {
        Coeff::real(Real::from_ratio(num, den, backend))
    }

    /// The imaginary unit.
    pub fn i(backend: Backend) -> Coeff {
        Coeff { re: Real::zero(backend), im: Real::from_ratio(1, 1, backend) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Coeff {
        Coeff { re: self.re.clone(), im: -&self.im }
    }

    pub fn scale_int(&self, k: i64) -> Coeff {
        Coeff { re: self.re.scale_int(k), im: self.im.scale_int(k) }
    }

    pub fn backend(&self) -> Backend {
        match self.re {
            Real::Exact(_) => Backend::Exact,
            Real::Float(_) => Backend::Float,
        }
    }

    /// Max of `|re|` and `|im|`.
    pub fn max_abs(&self) -> f64 {
        self.re.abs_f64().max(self.im.abs_f64())
    }

    pub(crate) fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }
}

impl Add<&Coeff> for &Coeff {
    type Output = Coeff;
    fn add(self, rhs: &Coeff) -> Coeff {
        Coeff { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub<&Coeff> for &Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &Coeff) -> Coeff {
        Coeff { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul<&Coeff> for &Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &Coeff) -> Coeff {
        // real-by-real is the hot path for the n = 20 runs
        if self.im.is_zero() && rhs.im.is_zero() {
            let re = &self.re * &rhs.re;
            let im = Real::zero(re_backend(&re));
            return Coeff { re, im };
        }
        let re = &(&self.re * &rhs.re) - &(&self.im * &rhs.im);
        let im = &(&self.re * &rhs.im) + &(&self.im * &rhs.re);
        Coeff { re, im }
    }
}

fn re_backend(r: &Real) -> Backend {
    match r {
        Real::Exact(_) => Backend::Exact,
        Real::Float(_) => Backend::Float,
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff { re: -&self.re, im: -&self.im }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "({}-{}i)", self.re, -&self.im)
        } else {
            write!(f, "({}+{}i)", self.re, self.im)
        }
    }
}
