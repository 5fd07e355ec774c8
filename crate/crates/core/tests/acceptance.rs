//! Acceptance suite: nine end-to-end criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the lines always reach the output.
//! The process fails if a criterion fails for any reason other than the one
//! documented printed-table defect checked in criterion 3.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Instant;

use anyonkit::adaptive_sim::{
    library_entry, protocol_library, r_formulas, run_exact, run_sampled, toffoli_from_cz, verify_alpha_recursion,
    MeasurementSpec, Next,
};
use anyonkit::anyon_model::{verify_hexagon, verify_modular, verify_pentagon, verify_unitarity, verify_verlinde, DS3_LABELS};
use anyonkit::braid_engine::{compare_block, decompose, generators, generators_sparse, printed_blocks, verify_braid_relations};
use anyonkit::fusion_space::move_matrix;
use anyonkit::group_closure::{
    check_conjugation_equivalence, check_presentation, check_table_row, closure, dseries_generators, full_image,
    printed_scale, sector_generators, table_rows, DEFAULT_CAP,
};
use anyonkit::qutrit_models::{gate_check, phase_text, TwoQutritSpace, GATE_CHECKS};
use anyonkit::{ds3_model, enumerate_basis, AnyonLabel, Cyclotomic, Matrix, Rational, SparseMatrix, TreeShape};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

struct Verdict {
    pass: bool,
    summary: String,
    /// Set when the failure is exactly the expected, documented one.
    known: bool,
}

fn pass(summary: String) -> Verdict {
    Verdict { pass: true, summary, known: false }
}

fn verdict(failures: Vec<String>, ok: String) -> Verdict {
    if failures.is_empty() {
        pass(ok)
    } else {
        Verdict { pass: false, summary: failures.join("; "), known: false }
    }
}

fn l(c: char) -> AnyonLabel {
    AnyonLabel::from_letter(c).unwrap()
}

fn rat(n: i64, d: i64) -> Cyclotomic {
    Cyclotomic::from_rational(&Rational::new(n, d))
}

fn consistency() -> Verdict {
    let m = ds3_model();
    let reps = [verify_pentagon(m), verify_hexagon(m), verify_unitarity(m)];
    let failures = reps.iter().filter(|r| !r.passed()).map(|r| format!("{}: {} violations", r.check, r.violations.len())).collect();
    let counts: Vec<String> = reps.iter().map(|r| format!("{} {}", r.check, r.checked)).collect();
    verdict(failures, format!("{} identities, 0 violations", counts.join(", ")))
}

fn verlinde() -> Verdict {
    let m = ds3_model();
    let v = verify_verlinde(m);
    let s = verify_modular(m);
    let mut failures = Vec::new();
    if v.checked != 512 {
        failures.push(format!("verlinde covered {} triples, expected 512", v.checked));
    }
    for r in [&v, &s] {
        if !r.passed() {
            failures.push(format!("{}: {} violations", r.check, r.violations.len()));
        }
    }
    verdict(failures, format!("512 fusion coefficients from S; {} modular identities hold", s.checked))
}

/// The printed full generators of (C,C), (D,A) and (D,B) each contain a
/// sigma_2 that is not unitary, so no braid representation can reproduce
/// them, and the printed 2-dim sector of (C,A) disagrees in sign with the
/// printed full matrices. Everything else must match.
const KNOWN_PRINT_DEFECTS: [&str; 4] =
    ["CA sector S2", "CC generators sigma2", "DA generators sigma2", "DB generators sigma2"];

fn printed_matrices() -> Verdict {
    let m = ds3_model();
    let mut failures = BTreeSet::new();
    let mut phase_problems = Vec::new();
    let mut matched = 0;
    for block in printed_blocks() {
        let cmp = compare_block(m, block).unwrap();
        for g in &cmp.groups {
            let label = g.label.trim_start_matches("sector ").to_string();
            let group = if g.label == "generators" { "generators".to_string() } else { format!("sector {label}") };
            for x in &g.matrices {
                if x.matches() {
                    matched += 1;
                } else {
                    let name = x.name.rsplit('.').next().unwrap_or(&x.name);
                    failures.insert(format!("{} {group} {name}", cmp.space));
                }
            }
            if g.matrices.iter().all(|x| x.matches()) && g.common_phase.is_none() {
                phase_problems.push(format!("{} {group}: no common phase", cmp.space));
            }
        }
    }
    let expected: BTreeSet<String> = KNOWN_PRINT_DEFECTS.iter().map(|s| s.to_string()).collect();
    // The CA sector record lists each disagreeing sector matrix; collapse to the sector.
    let collapsed: BTreeSet<String> = failures
        .iter()
        .map(|f| if f.starts_with("CA sector S2") { "CA sector S2".to_string() } else { f.clone() })
        .collect();
    let mut v = verdict(
        collapsed.iter().cloned().chain(phase_problems.iter().cloned()).collect(),
        format!("{matched} printed matrices match with one common phase per block"),
    );
    if !v.pass {
        v.known = phase_problems.is_empty() && collapsed == expected;
        v.summary = format!(
            "{matched} printed matrices match; mismatches: {} (non-unitary or sign-inconsistent printed entries)",
            v.summary
        );
    }
    v
}

fn largest_sector(m: char, z: char) -> Vec<Matrix> {
    let model = ds3_model();
    let (_, g, _) = printed_scale(model, l(m), l(z)).unwrap();
    let dec = decompose(&g);
    let s = dec.sectors.iter().max_by_key(|s| s.dim()).unwrap();
    sector_generators(model, l(m), l(z), s).unwrap().0
}

fn group_facts() -> Verdict {
    let model = ds3_model();
    let mut failures = Vec::new();
    for row in table_rows() {
        let c: Vec<char> = row.space.chars().collect();
        let chk = check_table_row(model, l(c[0]), l(c[1])).unwrap();
        for it in chk.items.iter().filter(|i| !i.pass) {
            failures.push(format!("{} {}: expected {}, got {}", row.space, it.what, it.expected, it.actual));
        }
    }

    let gens = largest_sector('D', 'F');
    let g = closure(&gens, DEFAULT_CAP).unwrap();
    let asg = [('a', gens[0].clone()), ('b', gens[1].clone()), ('c', gens[2].clone())];
    let rels = ["aba = bab", "bcb = cbc", "ac = ca", "a^3", "(ab)^6", "(bc)^6", "(abcaba)^2"];
    if !check_presentation(&g, &asg, &rels, 216).unwrap() {
        failures.push("DF 8-dim sector does not satisfy the Hessian presentation".into());
    }

    let d9 = closure(&dseries_generators(9, 1, 1, 2, 1, 1).unwrap(), DEFAULT_CAP).unwrap();
    if d9.order() != 162 {
        failures.push(format!("D(9,1,1;2,1,1) has order {}", d9.order()));
    }
    let gb = full_image(model, l('G'), l('B')).unwrap();
    let d18 = closure(&dseries_generators(18, 1, 1, 2, 1, 1).unwrap(), DEFAULT_CAP).unwrap();
    let p = Matrix::parse_rows(&[&["0", "0", "1"], &["1/sqrt2", "-1/sqrt2", "0"], &["1/sqrt2", "1/sqrt2", "0"]]).unwrap();
    // The printed p conjugates as g -> p^-1 g p.
    if !check_conjugation_equivalence(&p.adjoint(), &gb, &d18).unwrap() {
        failures.push("GB image is not conjugate to D(18,1,1;2,1,1) by p".into());
    }
    verdict(failures, "ten table rows, Hessian presentation, D(9,1,1;2,1,1) order 162, GB conjugate into D(18,1,1;2,1,1)".into())
}

fn gate_identities() -> Verdict {
    let mut failures = Vec::new();
    let mut n = 0;
    for name in GATE_CHECKS {
        let chk = gate_check(name).unwrap();
        n += chk.items.len();
        failures.extend(chk.items.iter().filter(|i| !i.pass).map(|i| format!("{name}: {}", i.what)));
    }
    verdict(failures, format!("{n} identities over {}", GATE_CHECKS.join(", ")))
}

fn braid_r() -> Verdict {
    let r = r_formulas(TwoQutritSpace::shared()).unwrap();
    let ph = |c: &Option<Cyclotomic>| c.as_ref().map_or("none".to_string(), phase_text);
    if r.holds_up_to_phase() {
        pass(format!(
            "both maps exact for i = 0,1,2, each up to its own global phase (W map {}, U map {}); listed terms carry the full norm",
            ph(&r.w_phase),
            ph(&r.u_phase)
        ))
    } else {
        Verdict {
            pass: false,
            summary: format!("W phase {}, U phase {}, complete {}", ph(&r.w_phase), ph(&r.u_phase), r.complete),
            known: false,
        }
    }
}

fn distribution_is(name: &str, rounds: usize, expect: &[(&str, Cyclotomic)], failures: &mut Vec<String>) {
    let e = library_entry(name, rounds).unwrap();
    let t = run_exact(&e.program, &e.input).unwrap();
    let d = t.distribution();
    let want: std::collections::BTreeMap<String, Cyclotomic> = expect.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
    if d != want {
        failures.push(format!("{name}: {:?}", d.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>()));
    }
}

fn protocol_exactness() -> Verdict {
    let mut failures = Vec::new();
    distribution_is("P", 1, &[("h", rat(1, 3)), ("residual:U", rat(4, 9)), ("residual:V", rat(2, 9))], &mut failures);
    distribution_is("R", 1, &[("gamma", rat(4, 9)), ("residual:U", rat(5, 9))], &mut failures);
    distribution_is("S", 1, &[("beta", rat(3, 4)), ("residual:S", rat(1, 4))], &mut failures);
    let third = rat(1, 3);
    let e = library_entry("flip2", 1).unwrap();
    let d = run_exact(&e.program, &e.input).unwrap().distribution();
    if d.len() != 3 || d.values().any(|p| *p != third) {
        failures.push(format!("flip2 branches: {d:?}"));
    }

    let one = Rational::one();
    for n in 1..=6usize {
        let k = n as i32;
        for (name, label, closed) in [
            ("P", "h", &one - &(&Rational::new(2, 3) * &Rational::new(5, 9).pow(k - 1))),
            ("R", "gamma", &one - &Rational::new(5, 9).pow(k)),
        ] {
            let e = library_entry(name, n).unwrap();
            let p = run_exact(&e.program, &e.input).unwrap().probability(label);
            if p != Cyclotomic::from_rational(&closed) {
                failures.push(format!("{name} n={n}: {p} vs {closed}"));
            }
        }
        let t = library_entry("toffoli", 1).unwrap();
        let p = run_exact(&toffoli_from_cz(2 * n - 1), &t.input).unwrap().probability("toffoli");
        let closed = &one - &Rational::new(1, 2).pow(k);
        if p != Cyclotomic::from_rational(&closed) {
            failures.push(format!("toffoli after {} rounds: {p} vs {closed}", 2 * n - 1));
        }
    }
    for a in [Rational::zero(), Rational::new(9, 25), Rational::one()] {
        if !verify_alpha_recursion(&a, 5).agree {
            failures.push(format!("alpha recursion from {a}"));
        }
    }
    verdict(
        failures,
        "P, R, S, FLIP2 distributions; P and R chains n <= 6; alpha recursion n <= 5; Toffoli n <= 6".into(),
    )
}

fn monte_carlo() -> Verdict {
    const TRIALS: u64 = 100_000;
    const SEED: u64 = 20_240_601;
    let mut failures = Vec::new();
    let mut parts = Vec::new();
    for (name, rounds, label) in [("P", 5, "h"), ("R", 4, "gamma")] {
        let e = library_entry(name, rounds).unwrap();
        let exact = e.closed_form.as_ref().unwrap().1.to_f64();
        let a = run_sampled(&e.program, &e.input, SEED, TRIALS).unwrap();
        let b = run_sampled(&e.program, &e.input, SEED, TRIALS).unwrap();
        let f = a.frequency(label);
        let sd = (exact * (1.0 - exact) / TRIALS as f64).sqrt();
        if !a.within(label, exact, 3.0) {
            failures.push(format!("{name}: {f} vs {exact} (sd {sd:.2e})"));
        }
        if a.counts != b.counts {
            failures.push(format!("{name}: same seed gave different counts"));
        }
        parts.push(format!("{name} n={rounds} {f:.5} vs {exact:.5} ({:+.2} sd)", (f - exact) / sd));
    }
    verdict(failures, format!("{}; reproducible with the same seed", parts.join(", ")))
}

fn element() -> impl Strategy<Value = Cyclotomic> {
    prop::collection::vec((0i64..72, -6i64..=6, 1i64..=5), 0..6)
        .prop_map(|terms| terms.into_iter().map(|(k, n, d)| Cyclotomic::zeta(k).scale(&Rational::new(n, d))).sum())
}

fn property_suites() -> Verdict {
    let mut failures = Vec::new();
    let mut runner = TestRunner::new(Config { cases: 128, failure_persistence: None, ..Config::default() });
    let ring = runner.run(&(element(), element(), element()), |(a, b, c)| {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inverse().unwrap()).is_one());
        }
        let back: Cyclotomic = a.to_string().parse().unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(Cyclotomic::from_coeff_strings(&a.to_coeff_strings()).unwrap(), a);
        Ok(())
    });
    if let Err(e) = ring {
        failures.push(format!("exact arithmetic: {e}"));
    }

    let model = ds3_model();
    let mut reps = 0;
    for &m in &DS3_LABELS {
        for &z in &DS3_LABELS {
            let b = Arc::new(enumerate_basis(model, m, z, &TreeShape::paired4()));
            if b.is_empty() {
                continue;
            }
            let g: Vec<Matrix> = generators(model, &b).unwrap().into_iter().map(|g| g.matrix).collect();
            reps += 1;
            if !verify_braid_relations(&g).passed() {
                failures.push(format!("braid relations on {m}{z}"));
            }
        }
    }
    let b8 = enumerate_basis(model, l('D'), l('G'), &TreeShape::two_branch8());
    if !verify_braid_relations(&generators_sparse(model, &b8).unwrap()).passed() {
        failures.push("braid relations on eight strands".into());
    }

    let mut specs: Vec<(String, usize, MeasurementSpec)> = Vec::new();
    for e in protocol_library(2).unwrap() {
        for (node, n) in &e.program.nodes {
            if let Next::Measure { spec, .. } = &n.next {
                specs.push((format!("{}/{node}", e.name), e.program.dim, spec.clone()));
            }
        }
    }
    for (name, dim, spec) in &specs {
        if !spec.is_complete(*dim) {
            failures.push(format!("measurement {name} is not complete"));
        }
    }

    let mut moves = 0;
    for &m in &DS3_LABELS {
        for &z in &DS3_LABELS {
            for shape in [TreeShape::caterpillar(4), TreeShape::paired4(), TreeShape::right_caterpillar(4)] {
                let b = enumerate_basis(model, m, z, &shape);
                if b.is_empty() {
                    continue;
                }
                for mv in shape.moves() {
                    let (target, f) = move_matrix(model, &b, mv).unwrap();
                    let (back, g) = move_matrix(model, &target, mv.inverse(&shape).unwrap()).unwrap();
                    moves += 1;
                    let id = SparseMatrix::identity(b.dim());
                    if f.adjoint().mul(&f) != id || back.labelings() != b.labelings() || g.mul(&f) != id {
                        failures.push(format!("F-move {mv:?} on {m}{z}"));
                    }
                }
            }
        }
    }
    verdict(
        failures,
        format!(
            "ring axioms and text round trips (128 cases); braid relations on {reps} four-strand spaces and DG on eight strands; {} protocol measurements complete; {moves} F-moves unitary and invertible",
            specs.len()
        ),
    )
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() {
    let criteria: [Criterion; 9] = [
        ("consistency", consistency),
        ("Verlinde and modular data", verlinde),
        ("printed braid matrices", printed_matrices),
        ("group facts", group_facts),
        ("gate identities", gate_identities),
        ("braid R amplitudes", braid_r),
        ("protocol exactness", protocol_exactness),
        ("Monte Carlo", monte_carlo),
        ("property suites", property_suites),
    ];
    // `cargo test -- --list` and filters are not meaningful here.
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return;
    }
    let start = Instant::now();
    let mut unexpected = 0;
    let mut passed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let v = f();
        let secs = t.elapsed().as_secs_f64();
        println!("{} {} {name}: {} [{secs:.1}s]", if v.pass { "PASS" } else { "FAIL" }, i + 1, v.summary);
        if v.pass {
            passed += 1;
        } else if !v.known {
            unexpected += 1;
        }
    }
    println!("acceptance: {passed}/9 criteria pass in {:.1}s", start.elapsed().as_secs_f64());
    if passed < 9 && unexpected == 0 {
        println!("acceptance: the remaining failure is the documented printed-table defect in criterion 3");
    }
    if unexpected > 0 {
        std::process::exit(1);
    }
}
