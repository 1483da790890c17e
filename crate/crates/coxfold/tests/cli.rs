//! CLI contract tests: input resolution, report content, exit codes, and
//! byte-identical JSON determinism.

use coxfold::cli::{execute, Command, CommonOpts, Format};

fn opts(input: &str, format: Format) -> CommonOpts {
    CommonOpts {
        input: input.to_string(),
        depth: 12,
        orbit_depth: 16,
        cap_closure: 1_000_000,
        cap_order: 1_000,
        cap_nodes: 1 << 20,
        format,
        out: None,
    }
}

#[test]
fn check_reports_the_refutation_with_exit_zero() {
    let (text, code) = execute(&Command::Check(opts("tD4:rot4", Format::Json))).unwrap();
    assert_eq!(code, 0, "a clean refutation is a successful run");
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["result"]["status"], "fails");
    assert_eq!(v["result"]["components"][0]["witness"]["pairing"], "-2");
    assert_eq!(v["tool"], "coxfold");
    assert_eq!(v["command"], "check");
}

#[test]
fn fold_reports_the_folded_family() {
    let (text, code) = execute(&Command::Fold(opts("E6:g", Format::Json))).unwrap();
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["result"]["folded_graph"]["name"], "F4");
    // the folded matrix row carries a 4
    let rows = v["result"]["folded_matrix"].as_array().unwrap();
    assert!(rows
        .iter()
        .any(|row| row.as_array().unwrap().iter().any(|c| c == "4")));
}

#[test]
fn roots_of_the_star_graph() {
    let (text, code) = execute(&Command::Roots({
        let mut o = opts("D4", Format::Json);
        o.depth = 99;
        o
    }))
    .unwrap();
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["result"]["count"], 12);
    assert_eq!(v["result"]["complete"], true);
}

#[test]
fn undecided_affine_input_exits_two() {
    // affine graph with trivial symmetry group: depth-bounded, no certificate
    let (text, code) = execute(&Command::Check(opts("tA2", Format::Json))).unwrap();
    assert_eq!(code, 2);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["result"]["status"], "verified-to-depth");
}

#[test]
fn truncation_families_exit_zero_when_fully_covered() {
    let (text, code) = execute(&Command::Check(opts("Dinf[6]:g", Format::Json))).unwrap();
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["result"]["status"], "verified-to-depth");
    assert_eq!(v["result"]["truncation_capped"], true);
}

#[test]
fn classify_explains_rejections() {
    let (text, _) = execute(&Command::Classify(opts("tE7:g", Format::Json))).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["result"]["family"], "tE7");
    assert!(v["result"]["case"].is_null());
    assert!(v["result"]["reason"]
        .as_str()
        .unwrap()
        .contains("excluded affine family"));
}

#[test]
fn identical_config_gives_byte_identical_json() {
    for command in [
        Command::Check(opts("tD4:g1g2", Format::Json)),
        Command::Fold(opts("tA5:g", Format::Json)),
        Command::Orbits(opts("E6:g", Format::Json)),
        Command::Roots(opts("B3", Format::Json)),
    ] {
        let (a, _) = execute(&command).unwrap();
        let (b, _) = execute(&command).unwrap();
        assert_eq!(a, b, "report must be deterministic");
    }
}

#[test]
fn file_input_parses_and_checks() {
    let dir = std::env::temp_dir();
    let path = dir.join(format!("coxfold-cli-test-{}.graph", std::process::id()));
    std::fs::write(
        &path,
        "name flip-path\nvertices 1..3\nedge 1-2\nedge 2-3\nsymmetry f: (1 3)\ngroup: f\n",
    )
    .unwrap();
    let (text, code) =
        execute(&Command::Check(opts(path.to_str().unwrap(), Format::Json))).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["result"]["status"], "holds");
    assert_eq!(
        v["result"]["components"][0]["classification"]["case"],
        "i"
    );
}

#[test]
fn catalog_import_in_files() {
    let dir = std::env::temp_dir();
    let path = dir.join(format!("coxfold-cli-import-{}.graph", std::process::id()));
    std::fs::write(&path, "catalog tD4:rot4\n").unwrap();
    let (text, code) =
        execute(&Command::Check(opts(path.to_str().unwrap(), Format::Json))).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["result"]["status"], "fails");
}

#[test]
fn unknown_inputs_are_usage_errors() {
    let err = execute(&Command::Check(opts("Z99:nope", Format::Text))).unwrap_err();
    assert!(err.to_string().contains("neither a catalog token"));
}

#[test]
fn witness_command_finds_and_misses() {
    let (text, _) = execute(&Command::Witness(opts("tE6:rot3", Format::Json))).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["result"]["pairing"], "-1");
    let (text, _) = execute(&Command::Witness(opts("E6:g", Format::Json))).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!(v["result"].is_null());
}

#[test]
fn selftest_filter_runs_a_subset() {
    let (text, code) = execute(&Command::Selftest {
        only: Some("orbit-map".into()),
        format: Format::Text,
    })
    .unwrap();
    assert_eq!(code, 0);
    assert!(text.contains("PASS orbit-map-bijection"));
    assert!(text.contains("1/1"));
}
