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

//! Fuzzy position and momentum observables `E_ρ`, `F_ν`.
//!
//! `E_ρ(X)` is diagonal in the position basis with entry `ρ(X - x_m)` at cell `m`;
//! `F_ν(Y) = F⁻¹ diag(ν(Y - p_k)) F` is its Fourier conjugate.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_complex::Complex64;

use crate::error::Result;
use crate::lattice::{Axis, GridSpec};
use crate::measures::{dirac_on, translated_mass_table, GridSet, LineMeasure};
use crate::operators::{operator_norm, CMatrix, Effect, HermitianOperator};

fn convolution_diagonal(mu: &LineMeasure, set: &GridSet) -> Result<Vec<f64>> {
    let grid = mu.grid();
    set.check_grid(&grid)?;
    let masses = mu.cell_masses();
    Ok((0..grid.n())
        .map(|m| translated_mass_table(&masses, set, grid.offset(m)))
        .collect())
}

/// `E_ρ(X)`.
pub fn position_effect(rho: &LineMeasure, set: &GridSet) -> Result<Effect> {
    let diag = convolution_diagonal(rho, set)?;
    Ok(Effect::trusted(HermitianOperator::diagonal(
        rho.grid(),
        Axis::Position,
        diag,
    )?))
}

/// `F_ν(Y)`, stored by its momentum-basis diagonal.
pub fn momentum_effect(nu: &LineMeasure, set: &GridSet) -> Result<Effect> {
    let diag = convolution_diagonal(nu, set)?;
    Ok(Effect::trusted(HermitianOperator::diagonal(
        nu.grid(),
        Axis::Momentum,
        diag,
    )?))
}

/// Canonical position projection `Π_Q(X)`.
pub fn sharp_position(grid: GridSpec, set: &GridSet) -> Result<Effect> {
    position_effect(&dirac_on(grid, Axis::Position, 0.0)?, set)
}

/// Canonical momentum projection `Π_P(Y) = F⁻¹ Π_Q(Y) F`.
pub fn sharp_momentum(grid: GridSpec, set: &GridSet) -> Result<Effect> {
    momentum_effect(&dirac_on(grid, Axis::Momentum, 0.0)?, set)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObservableKind {
    Position,
    Momentum,
}

/// `E_ρ` or `F_ν` as a set function, with dense momentum effects cached per set.
#[derive(Debug)]
pub struct OperatorMeasure {
    kind: ObservableKind,
    measure: LineMeasure,
    dense_cache: RwLock<HashMap<GridSet, Arc<CMatrix>>>,
}

impl OperatorMeasure {
    pub fn position(rho: LineMeasure) -> Self {
        Self::new(ObservableKind::Position, rho)
    }

    pub fn momentum(nu: LineMeasure) -> Self {
        Self::new(ObservableKind::Momentum, nu)
    }

    fn new(kind: ObservableKind, measure: LineMeasure) -> Self {
        Self {
            kind,
            measure,
            dense_cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn kind(&self) -> ObservableKind {
        self.kind
    }

    pub fn measure(&self) -> &LineMeasure {
        &self.measure
    }

    pub fn grid(&self) -> GridSpec {
        self.measure.grid()
    }

    pub fn effect(&self, set: &GridSet) -> Result<Effect> {
        match self.kind {
            ObservableKind::Position => position_effect(&self.measure, set),
            ObservableKind::Momentum => momentum_effect(&self.measure, set),
        }
    }

    /// Dense matrix of the effect of `set`; momentum effects are materialized once.
    pub fn dense_effect(&self, set: &GridSet) -> Result<Arc<CMatrix>> {
        if self.kind == ObservableKind::Position {
            return Ok(Arc::new(self.effect(set)?.to_matrix()));
        }
        if let Some(m) = self
            .dense_cache
            .read()
            .expect("effect cache poisoned")
            .get(set)
        {
            return Ok(Arc::clone(m));
        }
        let m = Arc::new(self.effect(set)?.to_matrix());
        let mut cache = self.dense_cache.write().expect("effect cache poisoned");
        Ok(Arc::clone(cache.entry(set.clone()).or_insert(m)))
    }

    pub fn cached_sets(&self) -> usize {
        self.dense_cache
            .read()
            .expect("effect cache poisoned")
            .len()
    }
}

/// `‖i(AB - BA)‖`.
pub fn commutator_norm(a: &HermitianOperator, b: &HermitianOperator) -> Result<f64> {
    a.grid().check_same(&b.grid())?;
    for axis in [Axis::Position, Axis::Momentum] {
        if a.diagonal_in(axis).is_some() && b.diagonal_in(axis).is_some() {
            return Ok(0.0);
        }
    }
    let (am, bm) = (a.to_matrix(), b.to_matrix());
    let c = (&am * &bm - &bm * &am) * Complex64::new(0.0, 1.0);
    let c = (&c + c.adjoint()) * Complex64::new(0.5, 0.0);
    operator_norm(&c)
}

/// Largest `‖E_{ρ1}(X) - E_{ρ2}(X)‖` over half-lines `X`.
///
/// Each half-line effect is diagonal with entries given by cyclic window sums of the
/// cell masses, so this is the largest absolute window sum of the mass difference over
/// every window length and start.
pub fn distinguish_measures(rho1: &LineMeasure, rho2: &LineMeasure) -> Result<f64> {
    rho1.grid().check_same(&rho2.grid())?;
    let n = rho1.grid().n();
    let diff: Vec<f64> = rho1
        .cell_masses()
        .iter()
        .zip(rho2.cell_masses())
        .map(|(a, b)| a - b)
        .collect();
    let mut prefix = vec![0.0; 2 * n + 1];
    for i in 0..2 * n {
        prefix[i + 1] = prefix[i] + diff[i % n];
    }
    let mut best: f64 = 0.0;
    for len in 1..=n {
        for start in 0..n {
            best = best.max((prefix[start + len] - prefix[start]).abs());
        }
    }
    Ok(best)
}
