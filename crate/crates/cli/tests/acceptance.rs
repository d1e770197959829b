//! Acceptance gate: one test per numbered criterion, each printing a
//! single pass/fail line. Every criterion re-runs its self-test check
//! from a fresh default configuration; the last one drives the compiled
//! binary twice and compares bytes.

use fixlab::suite::{run_check, SuiteConfig};
use std::process::Command;
use std::time::Duration;

fn criterion(index: usize, budget: Option<Duration>) {
    let cfg = SuiteConfig::default();
    let (check, took) = run_check(&cfg, index);
    println!(
        "criterion {:02} {}: {} — {} ({:.3}s)",
        check.index,
        check.name,
        if check.pass { "pass" } else { "FAIL" },
        check.detail,
        took.as_secs_f64()
    );
    assert!(check.pass, "criterion {index} failed: {}", check.detail);
    if let Some(budget) = budget {
        assert!(
            took <= budget,
            "criterion {index} took {took:?}, budget {budget:?}"
        );
    }
}

#[test]
fn criterion_01_completeness_oracles() {
    criterion(1, Some(Duration::from_secs(10)));
}

#[test]
fn criterion_02_engine_cross_table() {
    criterion(2, Some(Duration::from_secs(60)));
}

#[test]
fn criterion_03_pataraia_structure() {
    criterion(3, None);
}

#[test]
fn criterion_04_operator_construction() {
    criterion(4, None);
}

#[test]
fn criterion_05_aggregate_operators() {
    criterion(5, None);
}

#[test]
fn criterion_06_staged_iteration() {
    criterion(6, None);
}

#[test]
fn criterion_07_notation_laws() {
    criterion(7, None);
}

#[test]
fn criterion_08_carrier_classifier() {
    criterion(8, None);
}

#[test]
fn criterion_09_iteration_blowup() {
    criterion(9, Some(Duration::from_secs(120)));
}

#[test]
fn criterion_10_collapse_completeness() {
    criterion(10, None);
}

#[test]
fn criterion_11_dataflow_agreement() {
    criterion(11, None);
}

#[test]
fn criterion_12_deterministic_reports() {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_fixlab"))
            .args(["suite", "--seed", "7", "--jobs", "4"])
            .env_remove("FIXLAB_CAPS")
            .output()
            .expect("suite binary runs")
    };
    let first = run();
    let second = run();
    let pass = first.status.success()
        && second.status.success()
        && first.stdout == second.stdout
        && !first.stdout.is_empty();
    println!(
        "criterion 12 seeded-determinism: {} — two seeded suite runs produced {} report bytes{}",
        if pass { "pass" } else { "FAIL" },
        first.stdout.len(),
        if first.stdout == second.stdout { ", byte-identical" } else { ", DIFFERING" }
    );
    assert!(first.status.success(), "first suite run failed");
    assert!(second.status.success(), "second suite run failed");
    assert_eq!(first.stdout, second.stdout, "suite reports differ between runs");
    assert!(!first.stdout.is_empty());
}
