//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any fails.
//!
//! Tolerances: every check below runs on the exact backend and compares
//! with zero tolerance. Runtime limits are wall-clock, per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cliffqt::algebra::{binomial, Blade, Conjugation, Field, Multivector, Signature, Space};
use cliffqt::dsl::{check_soundness, check_soundness_with, corpus, eval_expr, random_instance, trial_bindings, CheckConfig};
use cliffqt::qtype::{classify_by_rank, eigenspace, qtype_project, ClosureTables, MainType, TypeSet, HARD_CODED};
use cliffqt::verify::{dimension_audit, oracle_sweep, selftest};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn sig(p: usize, q: usize) -> Signature {
    Signature::new(p, q).unwrap()
}

fn ts(s: &str) -> TypeSet {
    s.parse().unwrap()
}

fn seed(tag: u64, i: u64) -> u64 {
    tag.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ i
}

fn conj(u: &Multivector, c: Conjugation) -> Multivector {
    u.conjugate(c).unwrap()
}

fn blades(space: Space) -> Vec<(Blade, Multivector)> {
    Blade::all(space.signature).map(|b| (b, Multivector::blade(space, b).unwrap())).collect()
}

// 1. Both atom tables re-derived from blade brackets over every signature
// with n <= 5.
fn closure_tables() -> Outcome {
    let report = selftest(5, &HARD_CODED).unwrap();
    let (c, a) = (&report.commutator, &report.anticommutator);
    let exact = c.passed() && a.passed() && c.unrealized.is_empty() && a.unrealized.is_empty();
    outcome(
        exact && report.passed(),
        format!(
            "{} signatures; mismatches comm {} anti {}; unrealized comm {} anti {}",
            c.signatures.len(),
            c.mismatches.len(),
            a.mismatches.len(),
            c.unrealized.len(),
            a.unrealized.len()
        ),
    )
}

// 2. The sixteen quaternion-type conditions, with the subspaces E, I, J, K
// assigned per operation, on every basis blade pair for n <= 5.
fn quaternion_type_conditions() -> Outcome {
    // (X, Y, Z): X∘Y lies in Z, indices into (E, I, J, K)
    const CONDITIONS: [(usize, usize, usize); 16] = [
        (0, 0, 0), (1, 1, 0), (2, 2, 0), (3, 3, 0),
        (0, 1, 1), (1, 0, 1), (3, 2, 1), (2, 3, 1),
        (0, 2, 2), (2, 0, 2), (1, 3, 2), (3, 1, 2),
        (0, 3, 3), (3, 0, 3), (1, 2, 3), (2, 1, 3),
    ];
    let anti_eijk = [0u8, 1, 2, 3];
    let comm_eijk = [2u8, 3, 0, 1];
    let mut checked = 0u64;
    let mut failures = 0u64;
    for s in Signature::all_up_to(5) {
        let all = blades(Space::real_exact(s));
        for &(x, y, z) in &CONDITIONS {
            for (eijk, is_comm) in [(anti_eijk, false), (comm_eijk, true)] {
                let (kx, ky) = (eijk[x] as usize, eijk[y] as usize);
                let target = TypeSet::main(MainType::new(eijk[z]).unwrap());
                for (a, u) in all.iter().filter(|(b, _)| b.rank() % 4 == kx) {
                    for (_, v) in all.iter().filter(|(b, _)| b.rank() % 4 == ky) {
                        let _ = a;
                        let r = if is_comm { u.commutator(v) } else { u.anticommutator(v) }.unwrap();
                        checked += 1;
                        if !classify_by_rank(&r).is_subset(target) {
                            failures += 1;
                        }
                    }
                }
            }
        }
    }
    outcome(failures == 0, format!("32 conditions over 20 signatures, {checked} blade pairs, {failures} failures"))
}

// Eigenspaces of each conjugation, written out by hand.
const REAL_EIGEN: [(Conjugation, &str, &str); 3] = [
    (Conjugation::Reversion, "01", "23"),
    (Conjugation::GradeInvolution, "02", "13"),
    (Conjugation::GradeReversion, "03", "12"),
];

const COMPLEX_EIGEN: [(Conjugation, &str, &str); 7] = [
    (Conjugation::Reversion, "01+i01", "23+i23"),
    (Conjugation::GradeInvolution, "02+i02", "13+i13"),
    (Conjugation::Complex, "0123", "i0123"),
    (Conjugation::PseudoHermitian, "01+i23", "23+i01"),
    (Conjugation::GradeReversion, "03+i03", "12+i12"),
    (Conjugation::GradeComplex, "02+i13", "13+i02"),
    (Conjugation::GradePseudoHermitian, "03+i12", "12+i03"),
];

fn eigen_cases() -> Vec<(Field, Conjugation, TypeSet, i8)> {
    let mut out = Vec::new();
    for (field, list) in [(Field::Real, &REAL_EIGEN[..]), (Field::Complex, &COMPLEX_EIGEN[..])] {
        for &(c, plus, minus) in list {
            out.push((field, c, ts(plus), 1));
            out.push((field, c, ts(minus), -1));
        }
    }
    out
}

// 3. Conjugations act as ±1 on their eigenspaces; atom dimensions at n = 4.
fn eigenspaces() -> Outcome {
    let mut failures = 0;
    let mut draws = 0;
    let mut table_disagreements = 0;
    for (case, (field, c, t, sign)) in eigen_cases().into_iter().enumerate() {
        if eigenspace(c, sign, field).unwrap() != t {
            table_disagreements += 1;
        }
        for s in [sig(2, 2), sig(3, 1)] {
            let space = Space::new(s, field, cliffqt::algebra::Backend::Exact);
            for i in 0..500 {
                let u = random_instance(t, space, seed(case as u64 + 300, i), 1.0).unwrap();
                let expected = if sign > 0 { u.clone() } else { u.neg() };
                draws += 1;
                if conj(&u, c) != expected {
                    failures += 1;
                }
            }
        }
    }
    let audit = dimension_audit(sig(4, 0));
    let by_rank: Vec<u64> = (0..4).map(|k| (0..=4).filter(|r| r % 4 == k).map(|r| binomial(4, r)).sum()).collect();
    let dims_ok = audit.type_dims == [2, 4, 6, 4] && audit.type_dims.to_vec() == by_rank;
    outcome(
        failures == 0 && table_disagreements == 0 && dims_ok,
        format!(
            "20 eigenspaces, {draws} draws, {failures} failures, {table_disagreements} sign-table disagreements; dims at n=4 {:?}",
            audit.type_dims
        ),
    )
}

type Form = fn(&Multivector, &Multivector) -> Multivector;

fn prod(u: &Multivector, v: &Multivector) -> Multivector {
    u.geometric_product(v).unwrap()
}
fn prod_rev(u: &Multivector, v: &Multivector) -> Multivector {
    v.geometric_product(u).unwrap()
}
fn comm(u: &Multivector, v: &Multivector) -> Multivector {
    u.commutator(v).unwrap()
}
fn anti(u: &Multivector, v: &Multivector) -> Multivector {
    u.anticommutator(v).unwrap()
}

const FOUR: [(&str, Form); 4] = [("U U*", prod), ("U* U", prod_rev), ("[U, U*]", comm), ("{U, U*}", anti)];
const COMM: [(&str, Form); 1] = [("[U, U*]", comm)];
const ANTI: [(&str, Form); 1] = [("{U, U*}", anti)];

/// (conjugation, forms, claimed type, literal statement as listed)
type Claim = (Conjugation, &'static [(&'static str, Form)], &'static str);

const REAL_CLAIMS: [Claim; 4] = [
    (Conjugation::Reversion, &FOUR, "01"),
    (Conjugation::GradeInvolution, &COMM, "13"),
    (Conjugation::GradeInvolution, &ANTI, "02"),
    (Conjugation::GradeReversion, &FOUR, "03"),
];

const COMPLEX_CLAIMS: [Claim; 11] = [
    (Conjugation::Reversion, &FOUR, "01+i01"),
    (Conjugation::GradeInvolution, &COMM, "13+i13"),
    (Conjugation::GradeInvolution, &ANTI, "02+i02"),
    (Conjugation::Complex, &COMM, "i0123"),
    // listed as {U, U^~} in 0123
    (Conjugation::GradeReversion, &ANTI, "0123"),
    (Conjugation::PseudoHermitian, &FOUR, "01+i23"),
    (Conjugation::GradeReversion, &FOUR, "03+i03"),
    (Conjugation::GradeComplex, &COMM, "13+i02"),
    (Conjugation::GradeComplex, &ANTI, "02+i13"),
    (Conjugation::GradePseudoHermitian, &FOUR, "03+i12"),
    // not listed; checked alongside
    (Conjugation::Complex, &ANTI, "0123"),
];

// 4. Every listed conjugation-pair form lands in its stated type.
fn pair_forms() -> Outcome {
    let mut failed = Vec::new();
    let mut evaluations = 0;
    for (field, claims) in [(Field::Real, &REAL_CLAIMS[..]), (Field::Complex, &COMPLEX_CLAIMS[..])] {
        let space = Space::new(sig(2, 2), field, cliffqt::algebra::Backend::Exact);
        for (case, &(c, forms, claim)) in claims.iter().enumerate() {
            let claim = ts(claim);
            for &(name, form) in forms {
                let mut bad = 0;
                let mut first = None;
                for i in 0..1000 {
                    let u = random_instance(TypeSet::full(field), space, seed(400 + case as u64, i), 1.0).unwrap();
                    let r = form(&u, &conj(&u, c));
                    evaluations += 1;
                    let t = classify_by_rank(&r);
                    if !t.is_subset(claim) {
                        bad += 1;
                        first.get_or_insert(t);
                    }
                }
                if bad > 0 {
                    failed.push(format!(
                        "{field} {} with * = {}: {bad}/1000 outside {claim} (e.g. type {})",
                        name,
                        c.symbol(),
                        first.unwrap()
                    ));
                }
            }
        }
    }
    // The anticommutator with ^~ over the complex field lands in 03+i03.
    let space = Space::complex_exact(sig(2, 2));
    let corrected = (0..1000).all(|i| {
        let u = random_instance(TypeSet::COMPLEX_ALL, space, seed(499, i), 1.0).unwrap();
        classify_by_rank(&anti(&u, &conj(&u, Conjugation::GradeReversion))).is_subset(ts("03+i03"))
    });
    let witness = {
        let u = cliffqt::algebra::parse_mv("1 + i", space).unwrap();
        anti(&u, &conj(&u, Conjugation::GradeReversion))
    };
    let mut detail = format!("{evaluations} evaluations at (2,2)");
    if !failed.is_empty() {
        detail.push_str(&format!("; failing: {}", failed.join("; ")));
        detail.push_str(&format!(
            "; U = 1 + i gives {{U, U^~}} = {witness}; {{U, U^~}} in 03+i03 holds: {corrected}"
        ));
    }
    outcome(failed.is_empty(), detail)
}

// 5. Commutators vanish on the eigenspace hypotheses, and [U, U^~] = 0 for
// every U once n <= 3.
fn vanishing_commutators() -> Outcome {
    let mut failures = 0;
    let mut draws = 0;
    for (case, (field, c, t, _)) in eigen_cases().into_iter().enumerate() {
        let space = Space::new(sig(3, 1), field, cliffqt::algebra::Backend::Exact);
        for i in 0..1000 {
            let u = random_instance(t, space, seed(500 + case as u64, i), 1.0).unwrap();
            draws += 1;
            if !comm(&u, &conj(&u, c)).is_zero() {
                failures += 1;
            }
        }
    }
    // [U, U^~] is quadratic in U, so it vanishes identically iff its
    // polarization [X, Y^~] + [Y, X^~] vanishes on all basis pairs.
    let polarized = |all: &[(Blade, Multivector)]| {
        all.iter().all(|(_, x)| {
            all.iter().all(|(_, y)| {
                let gr = Conjugation::GradeReversion;
                comm(x, &conj(y, gr)).add(&comm(y, &conj(x, gr))).unwrap().is_zero()
            })
        })
    };
    let small_ok = Signature::all_up_to(3).into_iter().all(|s| polarized(&blades(Space::complex_exact(s))));
    let n4_identically_zero = Signature::all_of(4).into_iter().any(|s| polarized(&blades(Space::real_exact(s))));
    outcome(
        failures == 0 && small_ok && !n4_identically_zero,
        format!(
            "20 hypotheses, {draws} draws, {failures} nonzero; [U, U^~] = 0 for all U at n <= 3: {small_ok}; \
             fails somewhere at n = 4: {}",
            !n4_identically_zero
        ),
    )
}

// 6. [U, V] of two sparse type-2 elements at n = 20.
fn twenty_generators() -> Outcome {
    let space = Space::real_exact(sig(20, 0));
    let t = ts("2");
    let u = random_instance(t, space, 6001, 0.002).unwrap();
    let v = random_instance(t, space, 6002, 0.002).unwrap();
    let ranks_ok = u.ranks().chain(v.ranks()).all(|r| r % 4 == 2);
    let r = comm(&u, &v);
    let got = classify_by_rank(&r);
    outcome(
        ranks_ok && got.is_subset(t) && !r.is_zero(),
        format!("terms {} and {}, commutator {} terms of type {got}", u.len(), v.len(), r.len()),
    )
}

// 7. Atom subspaces against rank subspaces for n <= 4.
fn small_dimensions() -> Outcome {
    let mut problems = Vec::new();
    for s in Signature::all_up_to(4) {
        let n = s.n();
        let audit = dimension_audit(s);
        let expected: Vec<u64> = (0..4).map(|k| (0..=n).filter(|r| r % 4 == k).map(|r| binomial(n, r)).sum()).collect();
        if audit.type_dims.to_vec() != expected || !audit.passed() {
            problems.push(format!("{s}: dims {:?}", audit.type_dims));
        }
        if n == 3 && audit.type_dims.to_vec() != (0..4).map(|r| binomial(3, r)).collect::<Vec<_>>() {
            problems.push(format!("{s}: atoms are not single ranks"));
        }
        for (b, u) in blades(Space::real_exact(s)) {
            for k in 0..4u8 {
                let p = qtype_project(&u, MainType::new(k).unwrap());
                let expected = if b.rank() % 4 == k as usize { u.clone() } else { Multivector::zero(u.space()) };
                if p != expected {
                    problems.push(format!("{s}: projection of {} onto {k}", b.format_for(s)));
                }
            }
        }
    }
    let n4 = dimension_audit(sig(4, 0));
    let zero_is_0_plus_4 = n4.type_dims[0] == n4.rank_dims[0] + n4.rank_dims[4];
    outcome(
        problems.is_empty() && zero_is_0_plus_4,
        format!("14 signatures swept; 0 = rank 0 + rank 4 at n=4: {zero_is_0_plus_4}; problems: {}", problems.len()),
    )
}

// 8. The bundled corpus is sound at (2,2) and (4,1), and a corrupted table
// entry is caught with a counterexample that replays.
fn corpus_soundness() -> Outcome {
    let entries = corpus();
    let mut failures = Vec::new();
    for s in [sig(2, 2), sig(4, 1)] {
        let cfg = CheckConfig { seed: 8, ..CheckConfig::new(s) };
        for entry in &entries {
            let p = entry.parse().unwrap();
            let report = check_soundness(&p.expr, &p.env, &cfg).unwrap();
            if !report.passed() || !report.inferred.is_subset(entry.claim) {
                failures.push(format!("{} at {s}", entry.name));
            }
        }
    }

    let mut bad = HARD_CODED;
    bad.commutator[0][1] = 2;
    bad.commutator[1][0] = 2;
    let cfg = CheckConfig { seed: 8, ..CheckConfig::new(sig(4, 1)) };
    let p = cliffqt::dsl::parse_program("let x:0; let y:1; [x, y]", Field::Real).unwrap();
    let report = check_soundness_with(&p.expr, &p.env, &cfg, &bad).unwrap();
    let replays = report.first_counterexample.as_ref().is_some_and(|cx| {
        let space = Space::real_exact(cfg.signature);
        let bindings = trial_bindings(&p.expr, &p.env, space, cx.seed, cfg.density()).unwrap();
        let r = eval_expr(&p.expr, &p.env, &bindings).unwrap();
        r.to_string() == cx.result && classify_by_rank(&r) == cx.classified
    });
    let standard_ok = *ClosureTables::standard() == HARD_CODED;
    outcome(
        failures.is_empty() && !report.passed() && replays && standard_ok,
        format!(
            "{} programs x 2 signatures x 100 trials, {} failing{}; corruption detected: {}, counterexample replays: {replays}",
            entries.len(),
            failures.len(),
            if failures.is_empty() { String::new() } else { format!(" ({})", failures.join(", ")) },
            !report.passed()
        ),
    )
}

// 9. Naive word-rewriting product against the bitmask product, n <= 8.
fn oracle_equivalence() -> Outcome {
    let report = oracle_sweep(8).unwrap();
    outcome(
        report.passed(),
        format!(
            "{} signatures, {} pairs, {} discrepancies",
            report.signatures,
            report.pairs_checked,
            report.discrepancies.len()
        ),
    )
}

/// (id, title, check, runtime limit in seconds)
type Criterion = (u8, &'static str, fn() -> Outcome, Option<u64>);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (1, "closure tables re-derived for n <= 5", closure_tables, Some(60)),
        (2, "quaternion-type conditions on blades", quaternion_type_conditions, None),
        (3, "conjugation eigenspaces", eigenspaces, Some(30)),
        (4, "conjugation-pair forms", pair_forms, Some(60)),
        (5, "vanishing commutators", vanishing_commutators, None),
        (6, "sparse commutator at n = 20", twenty_generators, Some(120)),
        (7, "type and rank subspaces for n <= 4", small_dimensions, None),
        (8, "corpus soundness and fault injection", corpus_soundness, None),
        (9, "blade product oracle for n <= 8", oracle_equivalence, Some(60)),
    ];
    let mut passed = 0;
    for (id, title, run, limit) in criteria {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let in_time = limit.is_none_or(|s| elapsed <= Duration::from_secs(s));
        let ok = out.passed && in_time;
        passed += ok as usize;
        let limit = limit.map_or(String::new(), |s| format!(", limit {s} s"));
        println!(
            "{} criterion {id}: {title} ({:.2} s{limit}) - {}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            out.detail
        );
    }
    println!("acceptance: {passed}/9 criteria passed");
    if passed == 9 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
