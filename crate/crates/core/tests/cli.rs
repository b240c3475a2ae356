//! Black-box checks of the binary: artifacts, manifests, exit codes.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_eigenexpand")
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(bin())
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn read_json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn check_seq_writes_report_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["check-seq", "--gevrey", "1", "--horizon", "50"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report = read_json(&dir.path().join("check-seq.json"));
    assert_eq!(report["m00"]["verdict"], serde_json::json!("holds_on_prefix"));
    let manifest = read_json(&dir.path().join("check-seq.json.manifest.json"));
    assert_eq!(manifest["version"], serde_json::json!(env!("CARGO_PKG_VERSION")));
    assert!(manifest["config"].is_object());
}

#[test]
fn missing_weight_fails_with_error_json_and_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["check-seq"]);
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert_eq!(err["error"], serde_json::json!("domain"));
}

#[test]
fn expand_classify_synth_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    // e^{-y} on a 1-D Laguerre axis; coefficients (2/3)(1/3)^k
    let out = run_in(
        dir.path(),
        &[
            "expand",
            "--axes",
            r#"[{"kind":"laguerre","dim":1}]"#,
            "--truncation",
            "8",
            "--preset",
            "exp",
            "--boost",
            "60",
        ],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let coeffs = dir.path().join("coeffs.json");
    assert!(coeffs.exists());

    let out = run_in(
        dir.path(),
        &["classify", "--coeffs", "coeffs.json", "--gevrey", "1", "--horizon", "100"],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let fit = read_json(&dir.path().join("classify.json"));
    assert!(fit["classification"].is_string());

    std::fs::write(dir.path().join("points.csv"), "0.5\n1.0\n2.5\n").unwrap();
    let out = run_in(
        dir.path(),
        &["synth", "--coeffs", "coeffs.json", "--points", "points.csv"],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("synth.csv")).unwrap();
    let line = csv.lines().nth(2).unwrap(); // point 1.0
    let re: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
    // truncation at degree 8 leaves a ~2e-5 tail
    assert!((re - (-1.0f64).exp()).abs() < 1e-4, "f(1) = {re}");
}

#[test]
fn apply_then_solve_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("op.json"),
        r#"{"factors":[{"axis":{"kind":"hermite","dim":1},"coeff":"2/3","power":1}]}"#,
    )
    .unwrap();
    std::fs::write(
        dir.path().join("u.json"),
        r#"{"axes":[{"kind":"hermite","dim":1}],"truncation":[4],
            "entries":[{"idx":[0],"re":"1","im":"0"},{"idx":[3],"re":"-5/7","im":"0"}]}"#,
    )
    .unwrap();
    let out = run_in(
        dir.path(),
        &["apply", "--op", "op.json", "--input", "u.json", "--out", "f.json"],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = run_in(dir.path(), &["solve", "--op", "op.json", "--rhs", "f.json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report = read_json(&dir.path().join("solve.json"));
    assert_eq!(report["verdict"]["kind"], serde_json::json!("Unique"));
    let solution = read_json(&dir.path().join("solution.json"));
    let entries = solution["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 2);
    let e3 = entries.iter().find(|e| e["idx"][0] == 3).unwrap();
    // the round trip recovers u exactly
    assert_eq!(e3["re"], serde_json::json!("-5/7"));
}

#[test]
fn liouville_emits_csv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &[
            "liouville", "--c2", "0", "--c3", "sqrt2", "--gevrey", "1", "--horizon", "120",
            "--box", "2,50", "--eps", "0.5,1.0",
        ],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("liouville.csv")).unwrap();
    assert!(csv.starts_with("eps,c_eps,argmin_p,argmin_i,min_dist"));
    assert_eq!(csv.trim().lines().count(), 3);
    let json = read_json(&dir.path().join("liouville.json"));
    assert_eq!(json["degenerate_points"], serde_json::json!(0));
    assert_eq!(json["nested"].as_array().unwrap().len(), 3);
}

#[test]
fn rerun_is_byte_identical_modulo_timestamp() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["check-seq", "--gevrey", "1", "--horizon", "40"];
    assert!(run_in(dir.path(), &args).status.success());
    let first = std::fs::read_to_string(dir.path().join("check-seq.json")).unwrap();
    assert!(run_in(dir.path(), &args).status.success());
    let second = std::fs::read_to_string(dir.path().join("check-seq.json")).unwrap();
    assert_eq!(first, second);
}
