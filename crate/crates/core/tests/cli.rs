use std::path::Path;
use std::process::{Command, Output};

use qcharmlab::scenario::bundled;

fn qcharmlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcharmlab")).args(args).output().expect("spawn qcharmlab")
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn list_names_bundled_scenarios() {
    let out = qcharmlab(&["list"]);
    assert!(out.status.success());
    let names: Vec<String> = stdout(&out).lines().map(str::to_owned).collect();
    assert!(names.len() >= 4);
    for n in ["unit_disk_identity", "rotation", "affine_ellipse_k13", "perturbed_smooth"] {
        assert!(names.iter().any(|x| x == n), "{n} missing from {names:?}");
    }
}

#[test]
fn validate_reports_small_n() {
    let dir = tempfile::tempdir().unwrap();
    let mut s = bundled("unit_disk_identity").unwrap();
    s.n = 10;
    let path = dir.path().join("small.json");
    std::fs::write(&path, serde_json::to_string_pretty(&s).unwrap()).unwrap();
    let out = qcharmlab(&["validate", path.to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(stdout(&out).contains("N below minimum 64"), "{}", stdout(&out));
}

#[test]
fn validate_accepts_bundled() {
    let out = qcharmlab(&["validate", "affine_ellipse_k13"]);
    assert!(out.status.success(), "{}", stdout(&out));
}

#[test]
fn unknown_config_is_a_config_error() {
    let out = qcharmlab(&["run", "/nonexistent/scenario.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn orientation_reversing_map_fails_run() {
    let dir = tempfile::tempdir().unwrap();
    let out = qcharmlab(&["run", &fixture("orientation_reversing.json"), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "{}", stdout(&out));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(report["pass"], false);
    let failed: Vec<&serde_json::Value> = report["stages"].as_array().unwrap().iter().filter(|s| s["ok"] == false).collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0]["stage"], "qc");
    assert_eq!(failed[0]["error"]["kind"], "OrientationFailure");
}

#[test]
fn run_writes_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out = qcharmlab(&["run", "rotation", "--out", dir.path().to_str().unwrap(), "--K-grid", "32x256", "--seed", "9"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("rotation: PASS"));
    for f in ["report.json", "timings.json", "audit.csv", "field.csv", "coefficients.json", "summary.txt", "plots/image_circles.svg", "plots/laplacian_phi.svg"] {
        assert!(dir.path().join(f).is_file(), "{f} not written");
    }
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(report["scenario"]["seed"], 9);
    assert_eq!(report["scenario"]["grids"]["qc"], serde_json::json!({"radial": 32, "angular": 256}));
    assert_eq!(report["qc"]["grid"], serde_json::json!({"radial": 64, "angular": 512}));
}
