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

//! Experiment configuration, read from and written to JSON.

use std::collections::BTreeMap;

use covphase::measures::dirac_on;
use covphase::{
    gaussian_state, lattice_gaussian, Axis, DensityOperator, Error as CoreError, GaussianParams,
    GridSet, GridSpec, LineMeasure, StateVector,
};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub grid: GridConfig,
    /// Generating state `T` of the phase-space observable.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state: Option<StateSpec>,
    /// Measured state `S`; defaults to `state`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probe: Option<StateSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measures: Option<MeasurePair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regions: Option<RegionPair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub joint_state: Option<JointStateSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pauli: Option<PauliSpec>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_count")]
    pub count: usize,
    /// Per-check tolerance overrides for `verify`, keyed by check name.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub tolerances: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

fn default_count() -> usize {
    10_000
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub n: usize,
    /// Omitted means the symmetric grid `dx = dp = sqrt(2π/n)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dx: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum StateSpec {
    Gaussian {
        a: f64,
        #[serde(default)]
        b: f64,
        #[serde(default)]
        b_lin: f64,
        #[serde(default)]
        c: f64,
        /// Skip the tail-mass admission check (coarse grids).
        #[serde(default, skip_serializing_if = "is_false")]
        allow_tails: bool,
    },
    Mixture {
        components: Vec<Component>,
    },
    Table {
        re: Vec<f64>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        im: Vec<f64>,
    },
    MaximallyMixed,
}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Component {
    pub weight: f64,
    pub state: StateSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MeasureSpec {
    Dirac {
        x: f64,
    },
    GaussianDensity {
        a: f64,
    },
    /// Cell masses, renormalized.
    Table {
        masses: Vec<f64>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasurePair {
    pub position: MeasureSpec,
    pub momentum: MeasureSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SetSpec {
    Indices {
        indices: Vec<usize>,
    },
    /// Half-open coordinate intervals `[lo, hi)`.
    Intervals {
        intervals: Vec<[f64; 2]>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionPair {
    pub position: SetSpec,
    pub momentum: SetSpec,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JointStateSpec {
    pub var_q: f64,
    pub var_p: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PauliSpec {
    pub a: f64,
    pub b: f64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            grid: GridConfig { n: 32, dx: None },
            state: Some(StateSpec::Gaussian {
                a: 0.5,
                b: 0.0,
                b_lin: 0.0,
                c: 0.0,
                allow_tails: false,
            }),
            probe: None,
            measures: None,
            regions: None,
            joint_state: None,
            pauli: None,
            seed: 0,
            count: default_count(),
            tolerances: BTreeMap::new(),
            output: None,
        }
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("config: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn grid_spec(&self) -> Result<GridSpec, CliError> {
        let g = match self.grid.dx {
            Some(dx) => GridSpec::new(self.grid.n, dx),
            None => GridSpec::symmetric(self.grid.n),
        };
        g.map_err(|e| CliError::Usage(format!("grid: {e}")))
    }

    pub fn generator(&self, grid: GridSpec) -> Result<DensityOperator, CliError> {
        let spec = self
            .state
            .as_ref()
            .ok_or_else(|| CliError::Usage("config: missing field `state`".into()))?;
        build_state(spec, grid, "state")
    }

    pub fn probe_state(&self, grid: GridSpec) -> Result<DensityOperator, CliError> {
        match &self.probe {
            Some(spec) => build_state(spec, grid, "probe"),
            None => self.generator(grid),
        }
    }
}

/// Maps construction errors: bad parameters are usage errors, the rest invariant failures.
pub(crate) fn field_error(field: &str, e: CoreError) -> CliError {
    match e {
        CoreError::InvalidParameter { .. }
        | CoreError::InvalidGrid(_)
        | CoreError::InvalidDensity(_)
        | CoreError::OutOfRange { .. }
        | CoreError::TailMass { .. } => CliError::Usage(format!("{field}: {e}")),
        other => CliError::Invariant(format!("{field}: {other}")),
    }
}

fn pure_vector(spec: &StateSpec, grid: GridSpec, field: &str) -> Result<StateVector, CliError> {
    match spec {
        StateSpec::Gaussian {
            a,
            b,
            b_lin,
            c,
            allow_tails,
        } => {
            let psi = if *allow_tails {
                lattice_gaussian(grid, GaussianParams::new(*a, *b, *b_lin, *c))
            } else {
                gaussian_state(grid, *a, *b, *b_lin, *c)
            };
            psi.map_err(|e| field_error(field, e))
        }
        StateSpec::Table { re, im } => {
            if !im.is_empty() && im.len() != re.len() {
                return Err(CliError::Usage(format!(
                    "{field}: `re` has {} entries but `im` has {}",
                    re.len(),
                    im.len()
                )));
            }
            let amps = re
                .iter()
                .enumerate()
                .map(|(i, r)| Complex64::new(*r, im.get(i).copied().unwrap_or(0.0)))
                .collect();
            StateVector::new(grid, amps)
                .and_then(StateVector::normalized)
                .map_err(|e| field_error(field, e))
        }
        _ => Err(CliError::Usage(format!(
            "{field}: mixture components must be `gaussian` or `table`"
        ))),
    }
}

pub fn build_state(
    spec: &StateSpec,
    grid: GridSpec,
    field: &str,
) -> Result<DensityOperator, CliError> {
    match spec {
        StateSpec::MaximallyMixed => Ok(DensityOperator::maximally_mixed(grid)),
        StateSpec::Mixture { components } => {
            let parts = components
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let name = format!("{field}.components[{i}]");
                    Ok((c.weight, pure_vector(&c.state, grid, &name)?))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            DensityOperator::mixture(grid, &parts).map_err(|e| field_error(field, e))
        }
        pure => DensityOperator::pure(pure_vector(pure, grid, field)?)
            .map_err(|e| field_error(field, e)),
    }
}

pub fn build_measure(
    spec: &MeasureSpec,
    grid: GridSpec,
    axis: Axis,
    field: &str,
) -> Result<LineMeasure, CliError> {
    let m = match spec {
        MeasureSpec::Dirac { x } => dirac_on(grid, axis, *x),
        MeasureSpec::GaussianDensity { a } => LineMeasure::gaussian_density(grid, axis, *a),
        MeasureSpec::Table { masses } => LineMeasure::from_cell_masses(grid, axis, masses),
    };
    m.map_err(|e| field_error(field, e))
}

pub fn build_set(
    spec: &SetSpec,
    grid: GridSpec,
    axis: Axis,
    field: &str,
) -> Result<GridSet, CliError> {
    match spec {
        SetSpec::Indices { indices } => {
            GridSet::from_indices(grid, indices.iter().copied()).map_err(|e| field_error(field, e))
        }
        SetSpec::Intervals { intervals } => Ok(intervals
            .iter()
            .fold(GridSet::empty(grid), |acc, [lo, hi]| {
                acc.union(&GridSet::from_interval(grid, axis, *lo, *hi))
            })),
    }
}
