//! Acceptance gate: every criterion of the built-in verification suite
//! must pass under the default guard, inside its runtime budget. Each
//! test prints one pass/fail line (visible with `--nocapture`); the
//! criteria themselves live in `tafkit::selftest` so the `selftest`
//! command and this gate can never drift apart.

use tafkit::commands::DEFAULT_GUARD;
use tafkit::selftest::{criteria, run_one, Status};

fn run_criterion(id: u32, budget_ms: Option<u64>) {
    let list = criteria();
    let criterion = list.iter().find(|c| c.id == id).expect("criterion exists");
    let outcome = run_one(criterion, DEFAULT_GUARD);
    let label = match &outcome.status {
        Status::Pass => "PASS",
        Status::Fail(_) => "FAIL",
        Status::Skipped(_) => "SKIP",
    };
    println!(
        "[{label}] criterion {id}: {} ({} ms)",
        outcome.name, outcome.millis
    );
    match &outcome.status {
        Status::Pass => {}
        Status::Fail(msg) => panic!("criterion {id} failed: {msg}"),
        Status::Skipped(msg) => {
            panic!("criterion {id} skipped under the default guard: {msg}")
        }
    }
    if let Some(budget) = budget_ms {
        assert!(
            outcome.millis <= budget,
            "criterion {id} took {} ms, budget {budget} ms",
            outcome.millis
        );
    }
}

#[test]
fn criterion_01_quadratic_counterexample() {
    run_criterion(1, Some(1_000));
}

#[test]
fn criterion_02_smallest_obstruction_and_local_family() {
    run_criterion(2, Some(10_000));
}

#[test]
fn criterion_03_cubic_quotient_incomparability() {
    run_criterion(3, Some(5_000));
}

#[test]
fn criterion_04_classification_sweep() {
    run_criterion(4, Some(30_000));
}

#[test]
fn criterion_05_worked_factorization() {
    run_criterion(5, Some(1_000));
}

#[test]
fn criterion_06_chained_ring_laws() {
    run_criterion(6, Some(5_000));
}

#[test]
fn criterion_07_product_stability() {
    run_criterion(7, Some(60_000));
}

#[test]
fn criterion_08_oracle_equivalence() {
    run_criterion(8, Some(60_000));
}

#[test]
fn criterion_09_structure_conformance() {
    run_criterion(9, None);
}

#[test]
fn criterion_10_negative_control() {
    run_criterion(10, None);
}
