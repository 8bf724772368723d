//! A small language over typed symbolic multivectors, with abstract
//! quaternion-type inference and a randomized soundness checker.

mod ast;
mod check;
mod corpus;
mod eval;
mod infer;
mod parser;
mod poly;
mod random;

pub use ast::{conjugate_expr, Expr, Program, TypeEnv};
pub use check::{check_soundness, check_soundness_with, trial_bindings, CheckConfig, Counterexample, SoundnessReport};
pub use corpus::{corpus, CorpusEntry};
pub use eval::eval_expr;
pub use infer::{infer_type, infer_type_with};
pub use parser::{parse_expr, parse_program};
pub use poly::Poly;
pub use random::{default_density, random_instance};
