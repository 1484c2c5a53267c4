//! The acceptance battery: every headline claim, run at its full stated
//! scope, one pass/fail line per criterion.

use legch_core::suite::{run_criterion, SuiteConfig};

fn run(id: u32) {
    let cfg = SuiteConfig { fast: false };
    let r = run_criterion(id, cfg);
    println!(
        "criterion {:2} {:26} {} ({} ms, limit {} s)",
        r.id,
        r.name,
        if r.passed { "PASS" } else { "FAIL" },
        r.millis,
        r.time_limit_secs
    );
    assert!(
        r.passed,
        "criterion {} ({}) failed: {}",
        r.id, r.name, r.details
    );
}

#[test]
fn criterion_01_dga_golden() {
    run(1);
}

#[test]
fn criterion_02_augmentation_counts() {
    run(2);
}

#[test]
fn criterion_03_homotopy_classification() {
    run(3);
}

#[test]
fn criterion_04_linearized_ranks() {
    run(4);
}

#[test]
fn criterion_05_ainfinity_table() {
    run(5);
}

#[test]
fn criterion_06_minimal_model() {
    run(6);
}

#[test]
fn criterion_07_formality() {
    run(7);
}

#[test]
fn criterion_08_property_suites() {
    run(8);
}

#[test]
fn criterion_09_twist_invariance() {
    run(9);
}

#[test]
fn criterion_10_obstruction() {
    run(10);
}
