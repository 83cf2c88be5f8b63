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

//! Subcommand implementations.

use std::path::{Path, PathBuf};

use covphase::{
    covariant_observable, gaussian_joint_state, margin_measures, momentum_effect, pauli_pair_demo,
    position_effect, sample_outcomes, variance, Axis, Error as CoreError, LineMeasure,
};
use serde::Serialize;
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::config::{build_measure, build_set, field_error, ExperimentConfig};
use crate::report::{csv_table, write_file, Report};
use crate::suite::{run_suite, EffectPair, SuiteOptions};
use crate::CliError;

/// Command-line values that take precedence over the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub n: Option<usize>,
    pub dx: Option<f64>,
    pub seed: Option<u64>,
    pub count: Option<usize>,
    pub out: Option<PathBuf>,
}

pub fn load_config(path: Option<&Path>, ov: &Overrides) -> Result<ExperimentConfig, CliError> {
    let mut cfg = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?;
            ExperimentConfig::from_json(&text)?
        }
        None => ExperimentConfig::default(),
    };
    if let Some(n) = ov.n {
        cfg.grid.n = n;
    }
    if ov.dx.is_some() {
        cfg.grid.dx = ov.dx;
    }
    if let Some(seed) = ov.seed {
        cfg.seed = seed;
    }
    if let Some(count) = ov.count {
        cfg.count = count;
    }
    if let Some(out) = &ov.out {
        cfg.output = Some(out.display().to_string());
    }
    Ok(cfg)
}

fn out_dir(cfg: &ExperimentConfig) -> PathBuf {
    PathBuf::from(cfg.output.as_deref().unwrap_or("."))
}

fn invariant(e: CoreError) -> CliError {
    CliError::Invariant(e.to_string())
}

fn density_rows(mu: &LineMeasure) -> Vec<Vec<f64>> {
    let g = mu.grid();
    let h = g.spacing(mu.axis());
    mu.cell_masses()
        .iter()
        .enumerate()
        .map(|(c, m)| vec![g.coordinate(mu.axis(), c), m / h])
        .collect()
}

fn write_margins(dir: &Path, rho: &LineMeasure, nu: &LineMeasure) -> Result<(), CliError> {
    write_file(
        dir,
        "rho.csv",
        &csv_table(&["x", "density"], density_rows(rho)),
    )?;
    write_file(
        dir,
        "nu.csv",
        &csv_table(&["p", "density"], density_rows(nu)),
    )
}

/// Writes the margin densities of `G_T`.
pub fn margins(cfg: &ExperimentConfig) -> Result<String, CliError> {
    let grid = cfg.grid_spec()?;
    let t = cfg.generator(grid)?;
    let (rho, nu) = margin_measures(&t).map_err(invariant)?;
    let dir = out_dir(cfg);
    write_margins(&dir, &rho, &nu)?;
    Ok(format!(
        "wrote {} and {}",
        dir.join("rho.csv").display(),
        dir.join("nu.csv").display()
    ))
}

pub fn config_hash(cfg: &ExperimentConfig) -> String {
    let digest = Sha256::digest(serde_json::to_vec(cfg).expect("config serializes"));
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Draws outcomes of `G_T` in the probe state and writes their coordinates.
pub fn simulate(cfg: &ExperimentConfig) -> Result<String, CliError> {
    if cfg.count == 0 {
        return Err(CliError::Usage("count: must be positive".into()));
    }
    let grid = cfg.grid_spec()?;
    let t = cfg.generator(grid)?;
    let s = cfg.probe_state(grid)?;
    let draws = sample_outcomes(&covariant_observable(&t), &s, cfg.count, cfg.seed)
        .map_err(|e| field_error("probe", e))?;
    let rows = draws
        .iter()
        .map(|&(j, k)| vec![grid.position(j), grid.momentum(k)]);
    let dir = out_dir(cfg);
    write_file(&dir, "samples.csv", &csv_table(&["q", "p"], rows))?;
    let meta = json!({
        "seed": cfg.seed,
        "n": grid.n(),
        "dx": grid.dx(),
        "count": cfg.count,
        "config_sha256": config_hash(cfg),
    });
    write_file(
        &dir,
        "samples.json",
        &(serde_json::to_string_pretty(&meta).expect("json") + "\n"),
    )?;
    Ok(format!(
        "wrote {} samples to {}",
        cfg.count,
        dir.join("samples.csv").display()
    ))
}

pub fn suite_options(cfg: &ExperimentConfig) -> Result<SuiteOptions, CliError> {
    let effects = match (&cfg.measures, &cfg.regions) {
        (Some(m), Some(r)) => {
            let grid = cfg.grid_spec()?;
            let rho = build_measure(&m.position, grid, Axis::Position, "measures.position")?;
            let nu = build_measure(&m.momentum, grid, Axis::Momentum, "measures.momentum")?;
            let x = build_set(&r.position, grid, Axis::Position, "regions.position")?;
            let y = build_set(&r.momentum, grid, Axis::Momentum, "regions.momentum")?;
            Some(EffectPair {
                position: position_effect(&rho, &x)
                    .map_err(invariant)?
                    .into_operator(),
                momentum: momentum_effect(&nu, &y).map_err(invariant)?.into_operator(),
            })
        }
        (None, None) => None,
        _ => {
            return Err(CliError::Usage(
                "config: `measures` and `regions` must be given together".into(),
            ))
        }
    };
    Ok(SuiteOptions {
        seed: cfg.seed,
        tolerances: cfg.tolerances.clone(),
        pauli: cfg.pauli.map(|p| (p.a, p.b)),
        joint_state: cfg.joint_state,
        effects,
    })
}

/// Runs the suite; the report is returned even when checks fail.
pub fn verify(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let report = run_suite(&suite_options(cfg)?);
    if let Some(dir) = &cfg.output {
        write_file(Path::new(dir), "report.json", &(report.to_json() + "\n"))?;
    }
    Ok(report)
}

#[derive(Debug, Serialize)]
struct PauliOutput {
    a: f64,
    b: f64,
    n: usize,
    dx: f64,
    position_margin_distance: f64,
    momentum_margin_distance: f64,
    observable_distance: f64,
    rho_variance: f64,
    nu_variance: f64,
    moments_reliable: bool,
    tail_safe: bool,
}

pub fn pauli_demo(cfg: &ExperimentConfig) -> Result<String, CliError> {
    let grid = cfg.grid_spec()?;
    let (a, b) = cfg.pauli.map(|p| (p.a, p.b)).unwrap_or((0.5, 0.5));
    let r = pauli_pair_demo(a, b, grid).map_err(|e| field_error("pauli", e))?;
    let out = PauliOutput {
        a,
        b,
        n: grid.n(),
        dx: grid.dx(),
        position_margin_distance: r.position_margin_distance,
        momentum_margin_distance: r.momentum_margin_distance,
        observable_distance: r.observable_distance,
        rho_variance: r.rho_variance.value,
        nu_variance: r.nu_variance.value,
        moments_reliable: r.rho_variance.is_reliable() && r.nu_variance.is_reliable(),
        tail_safe: r.tail_safe,
    };
    let text = serde_json::to_string_pretty(&out).expect("json");
    if let Some(dir) = &cfg.output {
        write_file(Path::new(dir), "pauli.json", &(text.clone() + "\n"))?;
    }
    Ok(text)
}

/// Builds a state with the requested margin variances and writes its margins.
pub fn joint_state(cfg: &ExperimentConfig) -> Result<String, CliError> {
    let req = cfg
        .joint_state
        .ok_or_else(|| CliError::Usage("config: missing field `joint_state`".into()))?;
    let grid = cfg.grid_spec()?;
    let t = match gaussian_joint_state(req.var_q, req.var_p, grid) {
        Ok(t) => t,
        Err(CoreError::NotJointlyMeasurable { product, deficit }) => {
            return Err(CliError::ChecksFailed(format!(
                "NotJointlyMeasurable: var_q var_p = {product} is below 1/4 by {deficit}"
            )))
        }
        Err(e) => return Err(field_error("joint_state", e)),
    };
    let (rho, nu) = margin_measures(&t).map_err(invariant)?;
    let out = json!({
        "var_q": req.var_q,
        "var_p": req.var_p,
        "rho_variance": variance(&rho).value,
        "nu_variance": variance(&nu).value,
        "purity": t.purity(),
        "rank": t.rank(),
    });
    let text = serde_json::to_string_pretty(&out).expect("json");
    if let Some(dir) = &cfg.output {
        let dir = Path::new(dir);
        write_margins(dir, &rho, &nu)?;
        write_file(dir, "joint_state.json", &(text.clone() + "\n"))?;
    }
    Ok(text)
}
