//! Acceptance criteria for the library, one printed pass/fail line per
//! criterion (visible with `cargo test --test acceptance -- --nocapture`).

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use bpd_growth::{
    growth_by_insertion, growth_by_rules, run_suite, Biword, Permutation, PipeDream,
    VerifyOptions,
};

fn golden() -> Biword {
    Biword::parse("1,3,1,2,1/3,3,2,2,1").unwrap()
}

fn report_line(n: usize, label: &str, ok: bool) {
    println!(
        "criterion {n} ({label}): {}",
        if ok { "PASS" } else { "FAIL" }
    );
}

fn suite_criterion(n: usize, label: &str, suite: &str, opts: &VerifyOptions) {
    let report = run_suite(suite, opts).unwrap_or_else(|e| panic!("suite {suite} aborted: {e}"));
    let ok = report.passed() && report.cases > 0;
    report_line(n, label, ok);
    assert!(ok, "criterion {n} failed:\n{}", report.render());
}

#[test]
fn criterion_1_worked_growth_matrix() {
    let t0 = Instant::now();
    let by_rules = growth_by_rules(&golden()).unwrap();
    let by_insertion = growth_by_insertion(&golden()).unwrap();
    let elapsed = t0.elapsed();
    let bottom: Vec<String> = (0..=5).map(|j| by_rules.cell(0, j).to_string()).collect();
    let right: Vec<String> = by_rules
        .rightmost_chain()
        .iter()
        .map(|p| p.to_string())
        .collect();
    let ok = by_rules == by_insertion
        && by_rules.render_ascii() == by_insertion.render_ascii()
        && bottom == ["1", "1243", "12534", "13524", "15324", "25314"]
        && right == ["1", "1243", "1342", "25314"]
        && elapsed < Duration::from_secs(1);
    report_line(1, "worked growth diagram, both constructions", ok);
    assert!(ok, "bottom {bottom:?}, right {right:?}, elapsed {elapsed:?}");
}

#[test]
fn criterion_2_worked_compatible_sequence() {
    let t0 = Instant::now();
    let diagram = growth_by_rules(&golden()).unwrap();
    let cs = diagram.compatible_sequence().unwrap();
    let pd = PipeDream::from_compatible(&cs);
    let perm = pd.permutation().unwrap();
    let elapsed = t0.elapsed();
    let want_crosses: BTreeSet<(usize, usize)> = [(1, 1), (1, 3), (1, 4), (2, 1), (3, 1)]
        .into_iter()
        .collect();
    let ok = cs.a_seq == [4, 3, 1, 2, 3]
        && cs.r_seq == [1, 1, 1, 2, 3]
        && pd.m == 5
        && pd.crosses == want_crosses
        && perm == Permutation::parse("25314").unwrap()
        && elapsed < Duration::from_secs(1);
    report_line(2, "worked compatible sequence and pipe dream", ok);
    assert!(
        ok,
        "a {:?}, r {:?}, crosses {:?}, perm {perm}, elapsed {elapsed:?}",
        cs.a_seq, cs.r_seq, pd.crosses
    );
}

#[test]
fn criterion_3_growth_equivalence_sweep() {
    let opts = VerifyOptions {
        max_k: 3,
        max_len: 4,
        seed: 20260816,
        random_cases: 10_000,
    };
    let t0 = Instant::now();
    let report = run_suite("growth-equivalence", &opts).unwrap();
    let elapsed = t0.elapsed();
    let ok = report.passed()
        && report.cases == 422 + 10_000
        && elapsed < Duration::from_secs(300);
    report_line(
        3,
        "growth equivalence, exhaustive plus randomized sweep",
        ok,
    );
    assert!(
        ok,
        "cases {}, elapsed {elapsed:?}\n{}",
        report.cases,
        report.render()
    );
}

#[test]
fn criterion_4_rectification_strips_smallest_letters() {
    suite_criterion(
        4,
        "rectification equals the restricted image",
        "rect-strip",
        &VerifyOptions::default(),
    );
}

#[test]
fn criterion_5_rewriting_classes_match_fibers() {
    suite_criterion(
        5,
        "rewriting classes match image fibers",
        "knuth",
        &VerifyOptions::default(),
    );
}

#[test]
fn criterion_6_slides_commute_with_insertion() {
    suite_criterion(
        6,
        "slides commute with insertion",
        "commute",
        &VerifyOptions::default(),
    );
}

#[test]
fn criterion_7_reverse_slides_undo_forward_slides() {
    suite_criterion(
        7,
        "reverse slides undo forward slides exactly",
        "roundtrip",
        &VerifyOptions::default(),
    );
}

#[test]
fn criterion_8_structural_invariants() {
    suite_criterion(
        8,
        "structural invariants hold after every operation",
        "structural",
        &VerifyOptions::default(),
    );
}

#[test]
fn criterion_9_insertion_path_laws() {
    suite_criterion(
        9,
        "insertion paths obey the slide laws",
        "paths",
        &VerifyOptions::default(),
    );
}
