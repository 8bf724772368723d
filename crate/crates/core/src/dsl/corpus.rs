use super::ast::Program;
use super::parser::parse_program;
use crate::algebra::{Conjugation, Field};
use crate::error::Result;
use crate::qtype::{eigenspace, TableOp, TypeSet, HARD_CODED};

/// A bundled program together with the type its value is known to lie in.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusEntry {
    pub name: String,
    pub field: Field,
    pub program: String,
    pub claim: TypeSet,
}

impl CorpusEntry {
    fn new(name: impl Into<String>, field: Field, program: impl Into<String>, claim: &str) -> CorpusEntry {
        CorpusEntry {
            name: name.into(),
            field,
            program: program.into(),
            claim: claim.parse().expect("corpus claim"),
        }
    }

    pub fn parse(&self) -> Result<Program> {
        parse_program(&self.program, self.field)
    }
}

/// Forms `U U*`, `U* U`, `[U, U*]`, `{U, U*}` for a conjugation `*`.
#[derive(Clone, Copy)]
enum Forms {
    All,
    Comm,
    AntiComm,
}

const REAL_FORMS: &[(Conjugation, Forms, &str)] = &[
    (Conjugation::Reversion, Forms::All, "01"),
    (Conjugation::GradeInvolution, Forms::Comm, "13"),
    (Conjugation::GradeInvolution, Forms::AntiComm, "02"),
    (Conjugation::GradeReversion, Forms::All, "03"),
];

const COMPLEX_FORMS: &[(Conjugation, Forms, &str)] = &[
    (Conjugation::Reversion, Forms::All, "01+i01"),
    (Conjugation::GradeInvolution, Forms::Comm, "13+i13"),
    (Conjugation::GradeInvolution, Forms::AntiComm, "02+i02"),
    (Conjugation::Complex, Forms::Comm, "i0123"),
    (Conjugation::Complex, Forms::AntiComm, "0123"),
    (Conjugation::PseudoHermitian, Forms::All, "01+i23"),
    (Conjugation::GradeReversion, Forms::All, "03+i03"),
    (Conjugation::GradeComplex, Forms::Comm, "13+i02"),
    (Conjugation::GradeComplex, Forms::AntiComm, "02+i13"),
    (Conjugation::GradePseudoHermitian, Forms::All, "03+i12"),
];

fn call(c: Conjugation, arg: &str) -> String {
    c.call_names().iter().rev().fold(arg.to_string(), |acc, f| format!("{f}({acc})"))
}

fn self_forms(field: Field, table: &[(Conjugation, Forms, &str)], out: &mut Vec<CorpusEntry>) {
    for &(c, forms, claim) in table {
        let cx = call(c, "x");
        let progs = match forms {
            Forms::All => vec![format!("x*{cx}"), format!("{cx}*x"), format!("[x, {cx}]"), format!("{{x, {cx}}}")],
            Forms::Comm => vec![format!("[x, {cx}]")],
            Forms::AntiComm => vec![format!("{{x, {cx}}}")],
        };
        for p in progs {
            out.push(CorpusEntry::new(format!("{field} {p}"), field, p, claim));
        }
    }
}

/// The bundled corpus: every closure-table entry, the conjugation-pair
/// forms over both fields, the vanishing commutators on each eigenspace,
/// and a few mixed expressions.
pub fn corpus() -> Vec<CorpusEntry> {
    let mut out = Vec::new();

    for (op, table, bracket) in [
        (TableOp::Commutator, &HARD_CODED.commutator, ("[", "]")),
        (TableOp::Anticommutator, &HARD_CODED.anticommutator, ("{", "}")),
    ] {
        for (k, row) in table.iter().enumerate() {
            for (l, &r) in row.iter().enumerate() {
                out.push(CorpusEntry::new(
                    format!("{op:?} {k} {l}").to_lowercase(),
                    Field::Real,
                    format!("let x:{k}; let y:{l}; {}x, y{}", bracket.0, bracket.1),
                    &r.to_string(),
                ));
            }
        }
    }

    self_forms(Field::Real, REAL_FORMS, &mut out);
    self_forms(Field::Complex, COMPLEX_FORMS, &mut out);

    for (field, ops) in [(Field::Real, &Conjugation::REAL[..]), (Field::Complex, &Conjugation::ALL[..])] {
        for &c in ops {
            for sign in [1, -1] {
                let t = eigenspace(c, sign, field).expect("conjugation valid in field");
                let program = format!("let u:{t}; [u, {}]", call(c, "u"));
                out.push(CorpusEntry::new(format!("{field} vanishing {}", program), field, program, "∅"));
            }
        }
    }

    out.extend([
        CorpusEntry::new("union 0 1", Field::Real, "let x:0; let y:1; x + y", "01"),
        CorpusEntry::new("union 0 13", Field::Real, "let x:0; let y:13; x - 2*y", "013"),
        CorpusEntry::new("bracket sum", Field::Real, "let x:1; let y:2; [x, y] + {x, y}", "13"),
        CorpusEntry::new("product of unions", Field::Real, "let x:01; let y:23; x*y", "0123"),
        CorpusEntry::new("real fourth power", Field::Real, "x*rev(x)*x*rev(x)", "01"),
        CorpusEntry::new("complex fourth power", Field::Complex, "x*phc(x)*x*phc(x)", "01+i23"),
        CorpusEntry::new("imaginary rotation", Field::Complex, "let x:2; i*x + conj(x)", "2+i2"),
        CorpusEntry::new("mixed complex product", Field::Complex, "let x:01; let y:i2; x*y", "i0123"),
        CorpusEntry::new("nested brackets", Field::Real, "let x:1; let y:1; let z:2; [[x, y], z]", "2"),
    ]);
    out
}
