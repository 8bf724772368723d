use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::ast::{Expr, TypeEnv};
use super::eval::eval_expr;
use super::infer::infer_type_with;
use super::random::{default_density, random_instance};
use crate::algebra::{Backend, Field, Multivector, Signature, Space, FLOAT_TOLERANCE};
use crate::error::{Error, Result};
use crate::qtype::{classify_with_tol, ClosureTables, TypeSet};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckConfig {
    pub signature: Signature,
    pub backend: Backend,
    pub trials: usize,
    pub seed: u64,
    /// `None` selects [`default_density`] for the signature.
    pub density: Option<f64>,
    /// Float backend only; exact checks are strict.
    pub tol: f64,
}

impl CheckConfig {
    pub fn new(signature: Signature) -> CheckConfig {
        CheckConfig { signature, backend: Backend::Exact, trials: 100, seed: 0, density: None, tol: FLOAT_TOLERANCE }
    }

    /// Seed of trial `index`; feeding it back reproduces that trial's bindings.
    pub fn trial_seed(&self, index: usize) -> u64 {
        splitmix64(self.seed ^ splitmix64(index as u64))
    }

    pub fn density(&self) -> f64 {
        self.density.unwrap_or_else(|| default_density(self.signature.n()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub trial: usize,
    pub seed: u64,
    pub bindings: BTreeMap<String, String>,
    pub result: String,
    pub classified: TypeSet,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SoundnessReport {
    pub expr: String,
    pub signature: Signature,
    pub field: Field,
    pub backend: Backend,
    pub inferred: TypeSet,
    pub trials: usize,
    pub failures: usize,
    pub first_counterexample: Option<Counterexample>,
}

impl SoundnessReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Instantiates the symbols of `expr` at random and checks that every
/// evaluated result lies in the inferred type.
pub fn check_soundness(expr: &Expr, env: &TypeEnv, cfg: &CheckConfig) -> Result<SoundnessReport> {
    check_soundness_with(expr, env, cfg, ClosureTables::standard())
}

/// [`check_soundness`] with inference driven by explicit closure tables.
pub fn check_soundness_with(
    expr: &Expr,
    env: &TypeEnv,
    cfg: &CheckConfig,
    tables: &ClosureTables,
) -> Result<SoundnessReport> {
    if cfg.trials == 0 {
        return Err(Error::usage("trials must be at least 1"));
    }
    let inferred = infer_type_with(expr, env, tables);
    let space = Space::new(cfg.signature, env.field, cfg.backend);

    let outcomes: Vec<Option<Counterexample>> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let seed = cfg.trial_seed(trial);
            let bindings = trial_bindings(expr, env, space, seed, cfg.density())?;
            let result = eval_expr(expr, env, &bindings)?;
            let classified = classify_with_tol(&result, cfg.tol);
            Ok((!classified.is_subset(inferred)).then(|| Counterexample {
                trial,
                seed,
                bindings: bindings.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
                result: result.to_string(),
                classified,
            }))
        })
        .collect::<Result<_>>()?;

    let failures = outcomes.iter().filter(|o| o.is_some()).count();
    Ok(SoundnessReport {
        expr: expr.to_string(),
        signature: cfg.signature,
        field: env.field,
        backend: cfg.backend,
        inferred,
        trials: cfg.trials,
        failures,
        first_counterexample: outcomes.into_iter().flatten().next(),
    })
}

/// Random bindings for the symbols of `expr`, as drawn by the trial with
/// seed `seed`.
pub fn trial_bindings(
    expr: &Expr,
    env: &TypeEnv,
    space: Space,
    seed: u64,
    density: f64,
) -> Result<BTreeMap<String, Multivector>> {
    let mut symbols = expr.symbols();
    symbols.sort();
    symbols.dedup();
    symbols
        .into_iter()
        .enumerate()
        .map(|(i, name)| {
            let u = random_instance(env.lookup(&name), space, splitmix64(seed.wrapping_add(i as u64)), density)?;
            Ok((name, u))
        })
        .collect()
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
