//! End-to-end tests of the `okounkov` binary: exit codes, artifact
//! presence/absence, exact output values, and byte-level determinism.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_okounkov"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write_cfg(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

const NODAL_CFG: &str = r#"
[model]
kind = "nodal"

[valuation]
weights = ["3", "1"]

[run]
m_max = 6
level_cap = 6
svg = true
slices = ["0", "1/2", "1"]
"#;

#[test]
fn missing_model_exits_one_without_artifacts() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_cfg(tmp.path(), "empty.toml", "[run]\nm_max = 4\n");
    let out_dir = tmp.path().join("out");
    let out = run(&[
        "--config",
        &cfg,
        "--out",
        out_dir.to_str().unwrap(),
        "body",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(
        !out_dir.exists(),
        "failed runs must not leave partial artifacts"
    );
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("config:"), "stderr names the module: {err}");
}

#[test]
fn unknown_config_key_exits_one() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_cfg(tmp.path(), "bad.toml", "[run]\nbogus_key = 1\n");
    let out = run(&["--config", &cfg, "--out", tmp.path().to_str().unwrap(), "body"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn nodal_body_has_expected_vertices() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_cfg(tmp.path(), "nodal.toml", NODAL_CFG);
    let out_dir = tmp.path().join("out");
    let out = run(&[
        "--config",
        &cfg,
        "--out",
        out_dir.to_str().unwrap(),
        "body",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("body.json")).unwrap()).unwrap();
    assert_eq!(doc["dim"], 2);
    assert_eq!(doc["field"]["kind"], "rational");
    let verts = doc["vertices"].as_array().unwrap();
    let expect = serde_json::json!([
        [["0", "1"], ["0", "1"]],
        [["1", "2"], ["0", "1"]],
        [["0", "1"], ["2", "1"]]
    ]);
    assert_eq!(doc["vertices"], expect, "vertices {verts:?}");
    assert!(out_dir.join("predicted.json").exists());
    assert!(out_dir.join("slices.json").exists());
    let svg = fs::read_to_string(out_dir.join("body.svg")).unwrap();
    assert!(svg.contains("display-only"));
}

#[test]
fn verify_subset_passes() {
    let tmp = tempfile::tempdir().unwrap();
    let out_dir = tmp.path().join("out");
    let out = run(&["--out", out_dir.to_str().unwrap(), "verify", "--criteria", "A4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("A4 PASS"), "stdout: {text}");
    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("verify.json")).unwrap()).unwrap();
    assert_eq!(doc["criteria"].as_array().unwrap().len(), 1);
    assert_eq!(doc["all_pass"], true);
}

#[test]
fn verify_rejects_unknown_criterion() {
    let tmp = tempfile::tempdir().unwrap();
    let out_dir = tmp.path().join("out");
    let out = run(&[
        "--out",
        out_dir.to_str().unwrap(),
        "verify",
        "--criteria",
        "A99",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out_dir.exists());
}

#[test]
fn repeated_runs_are_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_cfg(tmp.path(), "nodal.toml", NODAL_CFG);
    let mut snapshots = Vec::new();
    for pass in 0..2 {
        let out_dir = tmp.path().join(format!("out{pass}"));
        let body = run(&["--config", &cfg, "--out", out_dir.to_str().unwrap(), "body"]);
        assert_eq!(body.status.code(), Some(0));
        let inv = run(&[
            "--config",
            &cfg,
            "--out",
            out_dir.to_str().unwrap(),
            "invariants",
        ]);
        assert_eq!(inv.status.code(), Some(0));
        let mut names: Vec<String> = fs::read_dir(&out_dir)
            .unwrap()
            .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
            .collect();
        names.sort();
        let blob: Vec<(String, Vec<u8>)> = names
            .iter()
            .map(|n| (n.clone(), fs::read(out_dir.join(n)).unwrap()))
            .collect();
        snapshots.push(blob);
    }
    assert_eq!(snapshots[0], snapshots[1], "artifacts must be deterministic");
}

#[test]
fn invariants_csv_is_exact() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_cfg(tmp.path(), "nodal.toml", NODAL_CFG);
    let out_dir = tmp.path().join("out");
    let out = run(&[
        "--config",
        &cfg,
        "--out",
        out_dir.to_str().unwrap(),
        "invariants",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = fs::read_to_string(out_dir.join("convergence_tau_1_2.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "m,T_m,S_{m,k},alpha_m,delta_m,bound_2A_over_m"
    );
    for line in lines {
        for cell in line.split(',') {
            assert!(
                !cell.contains('.'),
                "CSV cells are exact rationals, got {cell:?}"
            );
        }
    }
    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("invariants.json")).unwrap())
            .unwrap();
    assert_eq!(doc["T"], "2");
    assert_eq!(doc["log_discrepancy"], "4");
}

#[test]
fn interval_sequence_limits() {
    let tmp = tempfile::tempdir().unwrap();
    // Interval [1/i, 2/i]: every point eventually leaves, so the pointwise
    // limit is {0} and the cofinite limit is empty.
    let cfg = write_cfg(
        tmp.path(),
        "limits.toml",
        r#"
[limits]
mode = "affine"
dim = 1
base = [["0"], ["0"]]
slope = [["1"], ["2"]]
"#,
    );
    let out_dir = tmp.path().join("out");
    let out = run(&[
        "--config",
        &cfg,
        "--out",
        out_dir.to_str().unwrap(),
        "limits",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("limits.json")).unwrap()).unwrap();
    assert_eq!(doc["pointwise"]["vertices"], serde_json::json!([[["0", "1"]]]));
    assert_eq!(doc["cofinite"]["vertices"], serde_json::json!([]));
    assert_eq!(doc["volumes_equal"], true);
    assert_eq!(doc["cofinite_closed"], true);
}

#[test]
fn chamber_sweep_reports_equal_bodies() {
    let tmp = tempfile::tempdir().unwrap();
    // Three ratios inside the same chamber interval (2, 5).
    let cfg = write_cfg(
        tmp.path(),
        "sweep.toml",
        r#"
[model]
kind = "nodal"

[limits]
mode = "sweep"
ratios = ["5/2", "3", "7/2"]
"#,
    );
    let out_dir = tmp.path().join("out");
    let out = run(&[
        "--config",
        &cfg,
        "--out",
        out_dir.to_str().unwrap(),
        "--m-max",
        "5",
        "limits",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("sweep.json")).unwrap()).unwrap();
    assert_eq!(doc["all_equal"], true);
}
