//! Command-line front end. [`run`] never prints or exits; `main` does.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebra::{parse_mv, Backend, Field, Multivector, Signature, Space};
use crate::dsl::{check_soundness_with, corpus, infer_type_with, parse_program, CheckConfig, SoundnessReport};
use crate::error::{Error, Result};
use crate::qtype::{classify, qtype_project, ClosureTables, MainType, TableOp, TypeSet};
use crate::verify::{selftest, SelftestReport, MAX_SWEEP_N};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// What a command would print, and its exit status.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CliOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Parser)]
#[command(name = "cliffqt", version, about = "Quaternion types of Clifford algebra elements")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    /// Signature as P,Q.
    #[arg(long, global = true, default_value = "3,1")]
    sig: Signature,
    #[arg(long, global = true, value_enum, default_value_t = FieldArg::Real)]
    field: FieldArg,
    #[arg(long, global = true, value_enum, default_value_t = BackendArg::Exact)]
    backend: BackendArg,
    #[arg(long, global = true, env = "CLIFFQT_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 100)]
    trials: usize,
    /// Fraction of blades kept in random instances [default: 1 for n <= 10, else 0.002].
    #[arg(long, global = true)]
    density: Option<f64>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FieldArg {
    Real,
    Complex,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BackendArg {
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OpArg {
    Comm,
    Anti,
    Both,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Geometric product of two multivectors.
    Mul { lhs: String, rhs: String },
    /// Quaternion type of a multivector, with its per-atom components.
    Classify { mv: String },
    /// Projection onto a main type (or, with --rank, onto a rank).
    Project {
        k: usize,
        mv: String,
        #[arg(long)]
        rank: bool,
    },
    /// Print the single-atom closure tables.
    Tables {
        #[arg(long, value_enum, default_value_t = OpArg::Both)]
        op: OpArg,
    },
    /// Infer the type of a program.
    Infer { program: String },
    /// Randomized soundness check of a program, or of the bundled corpus.
    Check {
        #[arg(required_unless_present = "corpus", conflicts_with = "corpus")]
        program: Option<String>,
        #[arg(long)]
        corpus: bool,
        /// Overwrite a table entry first, as comm|anti:ROW:COL:VALUE.
        #[arg(long, value_name = "OP:ROW:COL:VALUE")]
        corrupt: Vec<String>,
    },
    /// Derive the closure tables, run the product oracle and the dimension audits.
    Selftest {
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        #[arg(long, value_name = "OP:ROW:COL:VALUE")]
        corrupt: Vec<String>,
    },
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> CliOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                CliOutcome { code, stdout: text, stderr: String::new() }
            } else {
                CliOutcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok((passed, stdout)) => CliOutcome {
            code: if passed { EXIT_OK } else { EXIT_FAILED },
            stdout,
            stderr: String::new(),
        },
        Err(e) => CliOutcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

impl Global {
    fn field(&self) -> Field {
        match self.field {
            FieldArg::Real => Field::Real,
            FieldArg::Complex => Field::Complex,
        }
    }

    fn backend(&self) -> Backend {
        match self.backend {
            BackendArg::Exact => Backend::Exact,
            BackendArg::Float => Backend::Float,
        }
    }

    fn space(&self) -> Space {
        Space::new(self.sig, self.field(), self.backend())
    }

    fn check_config(&self) -> CheckConfig {
        CheckConfig {
            signature: self.sig,
            backend: self.backend(),
            trials: self.trials,
            seed: self.seed,
            density: self.density,
            tol: crate::algebra::FLOAT_TOLERANCE,
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

fn execute(cli: &Cli) -> Result<(bool, String)> {
    let g = &cli.global;
    match &cli.command {
        Command::Mul { lhs, rhs } => {
            let space = g.space();
            let product = parse_mv(lhs, space)?.geometric_product(&parse_mv(rhs, space)?)?;
            Ok((true, show_mv(g, &product)))
        }
        Command::Classify { mv } => {
            let u = parse_mv(mv, g.space())?;
            Ok((true, show_classify(g, &u)))
        }
        Command::Project { k, mv, rank } => {
            let u = parse_mv(mv, g.space())?;
            let out = if *rank {
                u.grade_project(*k)?
            } else {
                let main = u8::try_from(*k).ok().and_then(MainType::new).ok_or_else(|| Error::usage("main type must be 0..3"))?;
                qtype_project(&u, main)
            };
            Ok((true, show_mv(g, &out)))
        }
        Command::Tables { op } => Ok((true, show_tables(g, ClosureTables::standard(), *op))),
        Command::Infer { program } => {
            let p = parse_program(program, g.field())?;
            let t = infer_type_with(&p.expr, &p.env, ClosureTables::standard());
            Ok((true, if g.json { json(&InferOut { program: p.to_string(), inferred: t }) } else { format!("{t}\n") }))
        }
        Command::Check { program, corpus: all, corrupt } => {
            let tables = corrupted(corrupt)?;
            let cfg = g.check_config();
            if *all {
                run_corpus(g, &cfg, &tables)
            } else {
                let text = program.as_deref().expect("clap requires a program without --corpus");
                let p = parse_program(text, g.field())?;
                let report = check_soundness_with(&p.expr, &p.env, &cfg, &tables)?;
                let out = if g.json { json(&report) } else { show_report(&report) };
                Ok((report.passed(), out))
            }
        }
        Command::Selftest { max_n, corrupt } => {
            if *max_n == 0 || *max_n > MAX_SWEEP_N {
                return Err(Error::usage(format!("--max-n must be in 1..={MAX_SWEEP_N}")));
            }
            let tables = corrupted(corrupt)?;
            let report = selftest(*max_n, &tables)?;
            let out = if g.json { json(&report) } else { show_selftest(&report) };
            Ok((report.passed(), out))
        }
    }
}

#[derive(Serialize)]
struct InferOut {
    program: String,
    inferred: TypeSet,
}

#[derive(Serialize)]
struct ClassifyOut {
    multivector: String,
    r#type: TypeSet,
    components: Vec<(String, String)>,
}

#[derive(Serialize)]
struct CorpusOut {
    name: String,
    claim: TypeSet,
    within_claim: bool,
    report: SoundnessReport,
}

fn show_mv(g: &Global, u: &Multivector) -> String {
    if g.json {
        json(&crate::algebra::MultivectorJson::from(u))
    } else {
        format!("{u}\n")
    }
}

fn show_classify(g: &Global, u: &Multivector) -> String {
    let t = classify(u);
    let components: Vec<(String, String)> = t
        .atoms()
        .map(|atom| {
            let p = qtype_project(u, atom.main);
            let part = if atom.imaginary {
                p.imag_part().scalar_mul(&crate::algebra::Coeff::i(u.backend())).expect("complex field")
            } else {
                p.real_part()
            };
            (TypeSet::atom(atom).to_string(), part.to_string())
        })
        .collect();
    if g.json {
        return json(&ClassifyOut { multivector: u.to_string(), r#type: t, components });
    }
    let mut out = format!("{t}\n");
    for (atom, part) in components {
        let _ = writeln!(out, "  {atom}: {part}");
    }
    out
}

fn show_tables(g: &Global, tables: &ClosureTables, op: OpArg) -> String {
    let ops: &[TableOp] = match op {
        OpArg::Comm => &[TableOp::Commutator],
        OpArg::Anti => &[TableOp::Anticommutator],
        OpArg::Both => &[TableOp::Commutator, TableOp::Anticommutator],
    };
    if g.json {
        return match op {
            OpArg::Both => json(tables),
            _ => json(tables.get(ops[0])),
        };
    }
    let mut out = String::new();
    for (i, &op) in ops.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "{op}\n      0  1  2  3");
        for (k, row) in tables.get(op).iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>3}")).collect();
            let _ = writeln!(out, "  {k} {}", cells.join(""));
        }
    }
    out
}

fn show_report(r: &SoundnessReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "expr: {}", r.expr);
    let _ = writeln!(out, "inferred: {}", r.inferred);
    let _ = writeln!(out, "signature: {} {} {}", r.signature, r.field, r.backend);
    let _ = writeln!(out, "trials: {} failures: {}", r.trials, r.failures);
    if let Some(c) = &r.first_counterexample {
        let _ = writeln!(out, "counterexample: trial {} seed {}", c.trial, c.seed);
        for (name, value) in &c.bindings {
            let _ = writeln!(out, "  {name} = {value}");
        }
        let _ = writeln!(out, "  result = {}", c.result);
        let _ = writeln!(out, "  classified {} not within {}", c.classified, r.inferred);
    }
    let _ = writeln!(out, "{}", if r.passed() { "PASS" } else { "FAIL" });
    out
}

fn run_corpus(g: &Global, cfg: &CheckConfig, tables: &ClosureTables) -> Result<(bool, String)> {
    let mut rows = Vec::new();
    for entry in corpus() {
        let p = entry.parse()?;
        let report = check_soundness_with(&p.expr, &p.env, cfg, tables)?;
        rows.push(CorpusOut {
            name: entry.name,
            claim: entry.claim,
            within_claim: report.inferred.is_subset(entry.claim),
            report,
        });
    }
    let passed = rows.iter().all(|r| r.within_claim && r.report.passed());
    if g.json {
        return Ok((passed, json(&rows)));
    }
    let mut out = String::new();
    for r in &rows {
        let ok = r.within_claim && r.report.passed();
        let _ = writeln!(
            out,
            "{} {}: inferred {} claim {} failures {}/{}",
            if ok { "PASS" } else { "FAIL" },
            r.name,
            r.report.inferred,
            r.claim,
            r.report.failures,
            r.report.trials
        );
        if let Some(c) = &r.report.first_counterexample {
            let _ = writeln!(out, "  counterexample: trial {} seed {} classified {}", c.trial, c.seed, c.classified);
        }
    }
    let failed = rows.iter().filter(|r| !(r.within_claim && r.report.passed())).count();
    let _ = writeln!(out, "{} programs, {} failed", rows.len(), failed);
    Ok((passed, out))
}

fn show_selftest(r: &SelftestReport) -> String {
    let mut out = String::new();
    for t in [&r.commutator, &r.anticommutator] {
        let _ = writeln!(
            out,
            "{} table, {} signatures up to n={}: {} mismatches, {} entries unrealized",
            t.op,
            t.signatures.len(),
            t.max_n,
            t.mismatches.len(),
            t.unrealized.len()
        );
        for m in &t.mismatches {
            let _ = write!(out, "  [{}][{}] expected {} derived {}", m.row, m.col, m.expected, m.derived);
            if let Some(w) = &m.witness {
                let _ = write!(out, " (witness {} at {}, {} -> {})", w.lhs, w.rhs, w.signature, w.result);
            }
            out.push('\n');
        }
    }
    let _ = writeln!(
        out,
        "product oracle: {} signatures, {} pairs, {} discrepancies",
        r.oracle.signatures,
        r.oracle.pairs_checked,
        r.oracle.discrepancies.len()
    );
    let bad: Vec<_> = r.dimensions.iter().filter(|d| !d.passed()).collect();
    let _ = writeln!(out, "dimension audit: {} signatures, {} with problems", r.dimensions.len(), bad.len());
    for d in bad {
        for p in &d.problems {
            let _ = writeln!(out, "  {}: {p}", d.signature);
        }
    }
    let _ = writeln!(out, "{}", if r.passed() { "PASS" } else { "FAIL" });
    out
}

/// Standard tables with `op:row:col:value` overrides applied.
fn corrupted(overrides: &[String]) -> Result<ClosureTables> {
    let mut tables = *ClosureTables::standard();
    for item in overrides {
        let bad = || Error::usage(format!("bad --corrupt `{item}`, expected comm|anti:ROW:COL:VALUE"));
        let parts: Vec<&str> = item.split(':').collect();
        let [op, row, col, value] = parts[..] else { return Err(bad()) };
        let op = match op {
            "comm" => TableOp::Commutator,
            "anti" => TableOp::Anticommutator,
            _ => return Err(bad()),
        };
        let idx = |s: &str| s.parse::<usize>().ok().filter(|&v| v < 4).ok_or_else(bad);
        let (row, col, value) = (idx(row)?, idx(col)?, idx(value)?);
        tables.get_mut(op)[row][col] = value as u8;
    }
    Ok(tables)
}
