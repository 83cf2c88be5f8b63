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

use thiserror::Error;

/// Errors raised by lattice, operator and phase-space constructions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("grid mismatch between operands")]
    GridMismatch,
    #[error("axis mismatch: cannot combine a position measure with a momentum measure")]
    AxisMismatch,
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("grid too small to hold the state: tail mass {tail_mass:.3e} exceeds {limit:.0e}")]
    TailMass { tail_mass: f64, limit: f64 },
    #[error("operator is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },
    #[error("operator is not an effect: spectrum [{min:.3e}, {max:.3e}] leaves [0, 1]")]
    NotAnEffect { min: f64, max: f64 },
    #[error("invalid density operator: {0}")]
    InvalidDensity(String),
    #[error("observable is not normalized: deviation from identity {deviation:.3e}")]
    NotNormalized { deviation: f64 },
    #[error("negative outcome probability {value:.3e} at cell ({q}, {p})")]
    NegativeProbability { q: usize, p: usize, value: f64 },
    #[error("moments unreliable on the torus: boundary mass {boundary_mass:.3e}")]
    TailUnsafe { boundary_mass: f64 },
    #[error("not jointly measurable: variance product {product} is below 1/4 by {deficit}")]
    NotJointlyMeasurable { product: f64, deficit: f64 },
    #[error("explicit effect tables are limited to n <= {max}, got n = {n}")]
    TableTooLarge { n: usize, max: usize },
    #[error("point {x} lies outside the grid range [{lo}, {hi}]")]
    OutOfRange { x: f64, lo: f64, hi: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
