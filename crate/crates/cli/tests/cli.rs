// Copyright 2026 The covphase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use std::path::Path;
use std::process::{Command, Output};

use covphase_cli::ExperimentConfig;
use serde_json::Value;

fn covphase(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_covphase"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, json: &str) -> String {
    let path = dir.join("config.json");
    std::fs::write(&path, json).unwrap();
    path.display().to_string()
}

fn read_csv(path: &Path) -> Vec<Vec<f64>> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect()
}

const FULL_CONFIG: &str = r#"{
  "grid": {"n": 16, "dx": 0.75},
  "state": {"kind": "mixture", "components": [
    {"weight": 0.25, "state": {"kind": "gaussian", "a": 0.5, "b": 0.1, "allow_tails": true}},
    {"weight": 0.75, "state": {"kind": "table", "re": [1,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0], "im": []}}
  ]},
  "probe": {"kind": "maximally_mixed"},
  "measures": {"position": {"kind": "dirac", "x": 0.0}, "momentum": {"kind": "gaussian_density", "a": 0.5}},
  "regions": {"position": {"kind": "indices", "indices": [1, 2, 3]},
              "momentum": {"kind": "intervals", "intervals": [[-1.0, 1.0], [2.0, 2.5]]}},
  "joint_state": {"var_q": 1.0, "var_p": 0.75},
  "pauli": {"a": 0.5, "b": 0.25},
  "seed": 12345678901234,
  "count": 77,
  "tolerances": {"dirac_mixture": 1e-13},
  "output": "somewhere"
}"#;

#[test]
fn dump_config_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_config(dir.path(), FULL_CONFIG);
    let original = ExperimentConfig::from_json(FULL_CONFIG).unwrap();
    let out = covphase(&["--config", &path, "--dump-config"]);
    assert!(out.status.success());
    let dumped = ExperimentConfig::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(dumped, original);

    let defaults = covphase(&["--dump-config"]);
    let parsed =
        ExperimentConfig::from_json(std::str::from_utf8(&defaults.stdout).unwrap()).unwrap();
    assert_eq!(parsed, ExperimentConfig::default());

    // flags take precedence over the file
    let out = covphase(&[
        "--config",
        &path,
        "--n",
        "32",
        "--seed",
        "5",
        "--dump-config",
    ]);
    let cfg = ExperimentConfig::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!((cfg.grid.n, cfg.seed, cfg.count), (32, 5, 77));
}

#[test]
fn margins_of_maximally_mixed_state_are_uniform() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_config(
        dir.path(),
        r#"{"grid": {"n": 16}, "state": {"kind": "maximally_mixed"}}"#,
    );
    let out_dir = dir.path().join("out");
    let out = covphase(&[
        "--config",
        &path,
        "--out",
        out_dir.to_str().unwrap(),
        "margins",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    for name in ["rho.csv", "nu.csv"] {
        let rows = read_csv(&out_dir.join(name));
        assert_eq!(rows.len(), 16);
        assert!(rows.iter().all(|r| (r[1] - rows[0][1]).abs() < 1e-15));
    }
}

#[test]
fn gaussian_margin_variance_from_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_config(
        dir.path(),
        r#"{"grid": {"n": 256, "dx": 0.1}, "state": {"kind": "gaussian", "a": 0.5}}"#,
    );
    let out = covphase(&[
        "--config",
        &path,
        "--out",
        dir.path().to_str().unwrap(),
        "margins",
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(dir.path().join("rho.csv")).unwrap();
    assert!(text.starts_with("x,density\n"));
    // 17 significant digits
    let first = text.lines().nth(1).unwrap().split(',').next().unwrap();
    assert_eq!(
        first
            .split('e')
            .next()
            .unwrap()
            .replace(['-', '.'], "")
            .len(),
        17
    );

    let rows = read_csv(&dir.path().join("rho.csv"));
    let dx = 0.1;
    let mass: f64 = rows.iter().map(|r| r[1] * dx).sum();
    let mean: f64 = rows.iter().map(|r| r[0] * r[1] * dx).sum();
    let var: f64 = rows.iter().map(|r| (r[0] - mean).powi(2) * r[1] * dx).sum();
    assert!((mass - 1.0).abs() < 1e-12);
    assert!((var - 0.5).abs() < 1e-5, "{var}");
}

#[test]
fn missing_fields_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_config(
        dir.path(),
        r#"{"grid": {"n": 16}, "state": {"kind": "gaussian", "b": 0.5}}"#,
    );
    let out = covphase(&["--config", &path, "margins"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`a`"));

    let path = write_config(dir.path(), r#"{"grid": {"n": 16}}"#);
    let out = covphase(&[
        "--config",
        &path,
        "--out",
        dir.path().to_str().unwrap(),
        "margins",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`state`"));

    let path = write_config(dir.path(), r#"{"state": {"kind": "maximally_mixed"}}"#);
    let out = covphase(&["--config", &path, "margins"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`grid`"));

    assert_eq!(covphase(&["--no-such-flag"]).status.code(), Some(2));
    assert_eq!(covphase(&[]).status.code(), Some(2));
    assert_eq!(covphase(&["--n", "7", "margins"]).status.code(), Some(2));
}

#[test]
fn simulate_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = r#"{"grid": {"n": 16, "dx": 0.6}, "state": {"kind": "gaussian", "a": 0.5, "allow_tails": true},
                 "probe": {"kind": "gaussian", "a": 1.0, "c": 0.5, "allow_tails": true}}"#;
    let path = write_config(dir.path(), cfg);
    let run = |sub: &str, seed: &str| {
        let out_dir = dir.path().join(sub);
        let out = covphase(&[
            "--config",
            &path,
            "--seed",
            seed,
            "--count",
            "2000",
            "--out",
            out_dir.to_str().unwrap(),
            "simulate",
        ]);
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        (
            std::fs::read(out_dir.join("samples.csv")).unwrap(),
            std::fs::read_to_string(out_dir.join("samples.json")).unwrap(),
        )
    };
    let (a, meta) = run("a", "42");
    let (b, _) = run("b", "42");
    let (c, _) = run("c", "43");
    assert_eq!(a, b);
    assert_ne!(a, c);
    assert_eq!(String::from_utf8(a).unwrap().lines().count(), 2001);

    let meta: Value = serde_json::from_str(&meta).unwrap();
    assert_eq!(meta["seed"], 42);
    assert_eq!(meta["n"], 16);
    assert_eq!(meta["dx"], 0.6);
    assert_eq!(meta["count"], 2000);
    assert_eq!(meta["config_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn zero_count_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let out = covphase(&[
        "--count",
        "0",
        "--out",
        dir.path().to_str().unwrap(),
        "simulate",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!dir.path().join("samples.csv").exists());
}

fn verify_with(config: &str) -> (Option<i32>, Value) {
    let dir = tempfile::tempdir().unwrap();
    let path = write_config(dir.path(), config);
    let out = covphase(&["--config", &path, "verify"]);
    (
        out.status.code(),
        serde_json::from_slice(&out.stdout).unwrap(),
    )
}

#[test]
fn default_verify_passes() {
    let out = covphase(&["verify"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["passed"], true);
    let checks = report["checks"].as_array().unwrap();
    let names: Vec<&str> = checks.iter().map(|c| c["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    for c in checks {
        assert!(!c["anchor"].as_str().unwrap().is_empty());
        assert!(c["value"].is_number() && c["tolerance"].is_number());
    }
    for needed in [
        "covariance.dense",
        "resolution_of_identity",
        "margin_theorem.position",
        "uncertainty.random",
        "pauli.observable_distance",
        "self_fourier.minimum_uncertainty",
        "localization.half",
        "dirac_mixture",
        "covariant_average.fixed_point",
    ] {
        assert!(names.contains(&needed), "{needed}");
    }
}

#[test]
fn zero_tolerance_fails_in_a_controlled_way() {
    let (code, report) = verify_with(
        r#"{"grid": {"n": 16}, "tolerances": {"resolution_of_identity": 0.0, "margin_theorem.position": 0.0}}"#,
    );
    assert_eq!(code, Some(1));
    assert_eq!(report["passed"], false);
    let failed: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(
        failed,
        ["margin_theorem.position", "resolution_of_identity"]
    );
}

#[test]
fn impossible_joint_state_is_reported() {
    let (code, report) = verify_with(
        r#"{"grid": {"n": 16}, "joint_state": {"var_q": 0.1, "var_p": 0.1},
            "measures": {"position": {"kind": "gaussian_density", "a": 0.5}, "momentum": {"kind": "gaussian_density", "a": 0.5}},
            "regions": {"position": {"kind": "intervals", "intervals": [[-1.0, 1.0]]}, "momentum": {"kind": "intervals", "intervals": [[-1.0, 1.0]]}}}"#,
    );
    assert_eq!(code, Some(1));
    let checks = report["checks"].as_array().unwrap();
    let request = checks
        .iter()
        .find(|c| c["name"] == "joint_state.request")
        .unwrap();
    assert_eq!(request["passed"], false);
    let detail = request["detail"].as_str().unwrap();
    assert!(detail.starts_with("NotJointlyMeasurable"), "{detail}");
    let deficit: f64 = detail.rsplit(' ').next().unwrap().parse().unwrap();
    assert!((deficit - 0.24).abs() < 1e-12);
    let configured = checks
        .iter()
        .find(|c| c["name"] == "noncommutativity.config")
        .unwrap();
    assert_eq!(configured["passed"], true);
}

#[test]
fn pauli_demo_and_joint_state_commands() {
    let out = covphase(&["--n", "16", "pauli-demo"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["position_margin_distance"].as_f64().unwrap() <= 1e-8);
    assert!(v["observable_distance"].as_f64().unwrap() >= 1e-6);

    let dir = tempfile::tempdir().unwrap();
    let path = write_config(
        dir.path(),
        r#"{"grid": {"n": 64}, "joint_state": {"var_q": 0.1, "var_p": 0.1}}"#,
    );
    let out = covphase(&["--config", &path, "joint-state"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("0.24"));

    let path = write_config(
        dir.path(),
        r#"{"grid": {"n": 64}, "joint_state": {"var_q": 1.0, "var_p": 1.0}}"#,
    );
    let out = covphase(&[
        "--config",
        &path,
        "--out",
        dir.path().to_str().unwrap(),
        "joint-state",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["rho_variance"].as_f64().unwrap() - 1.0).abs() < 0.01);
    assert!(v["purity"].as_f64().unwrap() < 1.0);
    assert!(dir.path().join("rho.csv").exists());

    let out = covphase(&["joint-state"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("joint_state"));
}
