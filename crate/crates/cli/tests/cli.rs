use std::path::PathBuf;
use std::process::{Command, Output};

use curvesing::logres::AnalysisReport;
use curvesing::poincare::PoincareSymmetry;
use curvesing::strata::StrataReport;
use serde::de::DeserializeOwned;
use serde::Serialize;

fn input(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../inputs").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curvesing")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn round_trip<T: DeserializeOwned + Serialize>(text: &str) -> T {
    let parsed: T = serde_json::from_str(text).unwrap();
    let again: serde_json::Value = serde_json::to_value(&parsed).unwrap();
    assert_eq!(again, serde_json::from_str::<serde_json::Value>(text).unwrap());
    parsed
}

#[test]
fn analyze_cusp() {
    let text = stdout(&run(&["analyze", "--input", input("cusp.json").to_str().unwrap()]));
    let report: AnalysisReport = round_trip(&text);
    assert_eq!((report.gamma.clone(), report.tau), (vec![2], Some(2)));
    assert_eq!(report.negative_residues, vec![vec![-1]]);
    assert!(report.checks.values().all(|c| c.passed));
}

#[test]
fn analyze_x5_y6_full_verification() {
    let text = stdout(&run(&["analyze", "--input", input("x5_y6.json").to_str().unwrap(), "--verify", "full"]));
    let report: AnalysisReport = round_trip(&text);
    assert_eq!(report.tau, Some(20));
    assert_eq!(report.dim_residues_over_normalization, 10);
    let mut negs: Vec<i64> = report.negative_residues.iter().map(|v| v[0]).collect();
    negs.sort_unstable_by(|a, b| b.cmp(a));
    assert_eq!(negs, vec![-1, -2, -3, -4, -7, -8, -9, -13, -14, -19]);
    assert!(report.checks.contains_key("residues_direct"), "{:?}", report.checks.keys());
}

#[test]
fn dual_presets_and_custom_generators() {
    let cusp = input("cusp.json");
    let cusp = cusp.to_str().unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&run(&["dual", "--input", cusp, "--ideal", "O_Dtilde"]))).unwrap();
    assert_eq!(v["dual"]["lambda"], serde_json::json!([2]));
    assert_eq!(v["dual"]["nu"], serde_json::json!([2]));
    let md = stdout(&run(&["dual", "--input", cusp, "--ideal", "jacobian", "--output-format", "markdown"]));
    assert!(md.contains("| I^∨ | {-1, ...} |"), "{md}");
    let custom = input("custom_ideal.json");
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&run(&["dual", "--input", cusp, "--ideal", custom.to_str().unwrap()]))).unwrap();
    assert_eq!(v["direct_agrees"], serde_json::json!(true));
}

#[test]
fn poincare_reports() {
    let text = stdout(&run(&["poincare", "--input", input("cusp.json").to_str().unwrap()]));
    let sym: PoincareSymmetry = round_trip(&text);
    assert_eq!(sym.ideal.to_string(), "1 - t + t^2");
    assert!(sym.polynomial_identity && sym.c_identity);
    let node = stdout(&run(&["poincare", "--input", input("node.json").to_str().unwrap(), "--output-format", "markdown"]));
    assert!(node.contains("sign = -1") && node.contains("polynomial identity: holds"), "{node}");
    let smooth = stdout(&run(&["poincare", "--input", input("cusp.json").to_str().unwrap(), "--ideal", "O_Dtilde"]));
    assert_eq!(round_trip::<PoincareSymmetry>(&smooth).ideal.to_string(), "1");
}

#[test]
fn strata_tables() {
    let text = stdout(&run(&["strata", "--input", input("x5_y6_plan.json").to_str().unwrap(), "--threads", "2"]));
    let report: StrataReport = round_trip(&text);
    let dims: Vec<i64> = report.strata.iter().map(|s| s.dim_residues_over_normalization.unwrap()).collect();
    assert_eq!(dims, vec![10, 9, 8, 8]);
    let md = stdout(&run(&["strata", "--input", input("front_plan.json").to_str().unwrap(), "--output-format", "markdown"]));
    for row in ["| S63 | 63 |", "| S54 | 54 |", "| S53 | 53 |"] {
        assert!(md.contains(row), "{md}");
    }
}

#[test]
fn random_plans_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let plan = dir.path().join("plan.json");
    std::fs::write(
        &plan,
        r#"{"family": {"base": [{"coeff": 1, "exps": [3, 0]}, {"coeff": -1, "exps": [0, 4]}],
            "deformations": [{"param": "s", "exps": [2, 2]}]},
            "samples": {"random": {"count": 3, "lo": -2, "hi": 2, "denominator": 2}}}"#,
    )
    .unwrap();
    let plan = plan.to_str().unwrap();
    let a = stdout(&run(&["strata", "--input", plan, "--seed", "7"]));
    let b = stdout(&run(&["strata", "--input", plan, "--seed", "7"]));
    assert_eq!(a, b);
    assert_eq!(round_trip::<StrataReport>(&a).samples.len(), 3);
}

#[test]
fn empty_plan_gives_empty_table() {
    let dir = tempfile::tempdir().unwrap();
    let plan = dir.path().join("empty.json");
    std::fs::write(&plan, r#"{"family": {"base": [{"coeff": 1, "exps": [2, 0]}, {"coeff": -1, "exps": [0, 3]}]}, "samples": []}"#)
        .unwrap();
    let out = run(&["strata", "--input", plan.to_str().unwrap(), "--output-format", "markdown"]);
    let md = stdout(&out);
    assert_eq!(md.lines().count(), 2, "{md}");
}

#[test]
fn error_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"branches\": [\n  {\"x\": 3}\n]}").unwrap();
    let out = run(&["analyze", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("branches[0]") && err.contains("line "), "{err}");

    let missing = run(&["analyze", "--input", dir.path().join("none.json").to_str().unwrap()]);
    assert_eq!(missing.status.code(), Some(2));

    let line = dir.path().join("line.json");
    std::fs::write(&line, r#"{"branches": [{"sqh": true, "equation_index": 0}], "equations": [[{"coeff": 1, "exps": [3, 0]}, {"coeff": -1, "exps": [0, 6]}]]}"#).unwrap();
    let out = run(&["analyze", "--input", line.to_str().unwrap()]);
    assert_ne!(out.status.code(), Some(0));

    let space = dir.path().join("space.json");
    std::fs::write(
        &space,
        r#"{"branches": [{"coords": [{"coeffs": {"3": 1}}, {"coeffs": {"4": 1}}, {"coeffs": {"5": 1}}]}]}"#,
    )
    .unwrap();
    let out = run(&["analyze", "--input", space.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
}
