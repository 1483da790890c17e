//! Release gate: each acceptance criterion runs as its own test, so the
//! suite prints one pass/fail line per criterion.

use coxfold::acceptance;

fn run(id: &str) {
    let outcomes = acceptance::run_all(Some(id));
    assert!(!outcomes.is_empty(), "unknown criterion id {id}");
    for o in outcomes {
        println!("{} {} — {}", if o.passed { "PASS" } else { "FAIL" }, o.id, o.detail);
        assert!(o.passed, "{}: {}", o.id, o.detail);
    }
}

#[test]
fn criterion_1_root_counts() {
    run("root-counts");
}

#[test]
fn criterion_2_folding_dictionary() {
    run("folding-dictionary");
}

#[test]
fn criterion_3_positive_verdicts() {
    run("positive-verdicts");
}

#[test]
fn criterion_4_negative_verdicts() {
    run("negative-verdicts");
}

#[test]
fn criterion_5_orbit_map_bijection() {
    run("orbit-map-bijection");
}

#[test]
fn criterion_6_affine_certificates() {
    run("affine-certificates");
}

#[test]
fn criterion_7_invariant_suites() {
    run("invariant-suites");
}

#[test]
fn criterion_8_reduction_consistency() {
    run("reduction-consistency");
}

#[test]
fn criterion_9_classifier_cross_validation() {
    run("classifier-cross-validation");
}
