//! Quaternion-type calculus for Clifford algebras `Cl(p,q)`.
//!
//! * [`algebra`]: exact multivector arithmetic and the conjugations.
//! * [`qtype`]: the four main quaternion types, type sets, and the closure
//!   tables for commutators and anticommutators.
//! * [`dsl`]: a small expression language with abstract type inference and a
//!   randomized soundness checker.
//! * [`verify`]: brute-force oracles used by the self-test.
//! * [`cli`]: the `cliffqt` command line.

pub mod algebra;
pub mod cli;
pub mod dsl;
pub mod error;
pub mod qtype;
pub mod verify;

pub use error::{Error, Result};
