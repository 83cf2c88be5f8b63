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

//! Covariant phase-space observables on the `n × n` lattice phase space.
//!
//! Phase-space cell `(j, k)` is the point `(x_j, p_k)`; its effect in `G_T` is
//! `(1/n) W T W†` with `W` the displacement by `(j - n/2, k - n/2)` lattice steps. On the
//! torus `(1/n) Σ W T W† = I` holds exactly, so every `G_T` is normalized.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lattice::{Axis, GridSpec};
use crate::measures::{GridSet, LineMeasure};
use crate::operators::{
    max_abs, operator_norm, weyl, CMatrix, DensityOperator, Displacement, Effect,
};

/// Largest `n` for which explicit `n²`-cell effect tables are built.
pub const MAX_TABLE_N: usize = 32;
/// Allowed deviation of `Σ_cells G(cell)` from the identity.
pub const NORMALIZATION_TOL: f64 = 1e-10;
/// Negative probabilities down to this value are treated as rounding and clamped.
pub const NEGATIVE_PROBABILITY_TOL: f64 = 1e-12;

/// A set of phase-space cells `(q-index, p-index)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PhaseRegion {
    n: usize,
    members: Vec<bool>,
}

impl PhaseRegion {
    pub fn empty(grid: GridSpec) -> Self {
        Self {
            n: grid.n(),
            members: vec![false; grid.n() * grid.n()],
        }
    }

    pub fn full(grid: GridSpec) -> Self {
        Self {
            n: grid.n(),
            members: vec![true; grid.n() * grid.n()],
        }
    }

    pub fn from_cells(
        grid: GridSpec,
        cells: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let n = grid.n();
        let mut r = Self::empty(grid);
        for (j, k) in cells {
            if j >= n || k >= n {
                return Err(Error::InvalidParameter {
                    name: "cells",
                    reason: format!("cell ({j}, {k}) outside the {n}x{n} phase space"),
                });
            }
            r.members[j * n + k] = true;
        }
        Ok(r)
    }

    pub fn cell(grid: GridSpec, j: usize, k: usize) -> Result<Self> {
        Self::from_cells(grid, [(j, k)])
    }

    /// `X × Y`.
    pub fn product(q: &GridSet, p: &GridSet) -> Result<Self> {
        if q.n() != p.n() {
            return Err(Error::GridMismatch);
        }
        let n = q.n();
        Ok(Self {
            n,
            members: (0..n * n)
                .map(|i| q.contains(i / n) && p.contains(i % n))
                .collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, j: usize, k: usize) -> bool {
        self.members[(j % self.n) * self.n + k % self.n]
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|m| **m).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        self.members
            .iter()
            .enumerate()
            .filter_map(move |(i, m)| m.then_some((i / n, i % n)))
    }

    /// `Z + (a, b)`, cyclically.
    pub fn shifted(&self, a: i64, b: i64) -> Self {
        let n = self.n as i64;
        let mut members = vec![false; self.members.len()];
        for (j, k) in self.cells() {
            let jj = (j as i64 + a).rem_euclid(n) as usize;
            let kk = (k as i64 + b).rem_euclid(n) as usize;
            members[jj * self.n + kk] = true;
        }
        Self { n: self.n, members }
    }

    /// `-Z`.
    pub fn reflected(&self) -> Self {
        let n = self.n;
        let mut members = vec![false; self.members.len()];
        for (j, k) in self.cells() {
            members[((n - j) % n) * n + (n - k) % n] = true;
        }
        Self { n, members }
    }

    fn check_grid(&self, grid: &GridSpec) -> Result<()> {
        if self.n == grid.n() {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }
}

/// Weyl displacement attached to phase-space cell `(j, k)`.
pub fn cell_displacement(grid: GridSpec, j: usize, k: usize) -> Displacement {
    weyl(grid, grid.offset(j), grid.offset(k))
}

#[derive(Debug, Clone, PartialEq)]
pub enum Generator {
    /// `G_T`, evaluated lazily from the generating state.
    State {
        state: DensityOperator,
        matrix: CMatrix,
    },
    /// One effect per cell, row-major in `(q-index, p-index)`.
    Table(Vec<CMatrix>),
}

/// Phase-space observable: a normalized family of effects indexed by cells.
#[derive(Debug, Clone, PartialEq)]
pub struct JointObservable {
    grid: GridSpec,
    generator: Generator,
}

/// `G_T`.
pub fn covariant_observable(t: &DensityOperator) -> JointObservable {
    JointObservable {
        grid: t.grid(),
        generator: Generator::State {
            matrix: t.to_matrix(),
            state: t.clone(),
        },
    }
}

impl JointObservable {
    /// Explicit table; validates positivity of every cell and normalization.
    pub fn from_table(grid: GridSpec, cells: Vec<CMatrix>) -> Result<Self> {
        let n = grid.n();
        if n > MAX_TABLE_N {
            return Err(Error::TableTooLarge {
                n,
                max: MAX_TABLE_N,
            });
        }
        if cells.len() != n * n {
            return Err(Error::InvalidParameter {
                name: "cells",
                reason: format!("expected {} effects, got {}", n * n, cells.len()),
            });
        }
        let cells = cells
            .into_iter()
            .map(|m| Effect::from_matrix(grid, m).map(|e| e.to_matrix()))
            .collect::<Result<Vec<_>>>()?;
        let obs = Self {
            grid,
            generator: Generator::Table(cells),
        };
        let deviation = obs.normalization_deviation();
        if deviation > NORMALIZATION_TOL {
            return Err(Error::NotNormalized { deviation });
        }
        Ok(obs)
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn generator(&self) -> &Generator {
        &self.generator
    }

    pub fn state(&self) -> Option<&DensityOperator> {
        match &self.generator {
            Generator::State { state, .. } => Some(state),
            Generator::Table(_) => None,
        }
    }

    pub fn cell_effect(&self, j: usize, k: usize) -> CMatrix {
        let n = self.grid.n();
        match &self.generator {
            Generator::State { matrix, .. } => {
                cell_displacement(self.grid, j, k).conjugate(matrix) / Complex64::new(n as f64, 0.0)
            }
            Generator::Table(cells) => cells[(j % n) * n + k % n].clone(),
        }
    }

    /// `Σ_cells G(cell)`, summed in row-major cell order.
    pub fn total(&self) -> CMatrix {
        let n = self.grid.n();
        let mut acc = CMatrix::zeros(n, n);
        for j in 0..n {
            for k in 0..n {
                acc += self.cell_effect(j, k);
            }
        }
        acc
    }

    /// `‖Σ_cells G(cell) - I‖`.
    pub fn normalization_deviation(&self) -> f64 {
        let n = self.grid.n();
        let diff = self.total() - CMatrix::identity(n, n);
        operator_norm(&diff).unwrap_or(f64::INFINITY)
    }

    fn table(&self) -> Vec<CMatrix> {
        let n = self.grid.n();
        (0..n * n).map(|i| self.cell_effect(i / n, i % n)).collect()
    }
}

/// `G(Z)`, summed over the cells of `Z`.
pub fn effect_of_region(g: &JointObservable, region: &PhaseRegion) -> Result<Effect> {
    region.check_grid(&g.grid)?;
    let n = g.grid.n();
    let mut acc = CMatrix::zeros(n, n);
    for (j, k) in region.cells() {
        acc += g.cell_effect(j, k);
    }
    Effect::from_matrix(g.grid, acc)
}

/// Margins `(ρ, ν)` of `G_T`: `ρ(x) ∝ Σ λ_i |φ_i(-x)|²`, `ν(p) ∝ Σ λ_i |φ̂_i(-p)|²`.
pub fn margin_measures(t: &DensityOperator) -> Result<(LineMeasure, LineMeasure)> {
    let grid = t.grid();
    let reflect =
        |table: Vec<f64>| -> Vec<f64> { (0..grid.n()).map(|c| table[grid.reflect(c)]).collect() };
    let rho =
        LineMeasure::from_cell_masses(grid, Axis::Position, &reflect(t.position_probabilities()))?;
    let nu =
        LineMeasure::from_cell_masses(grid, Axis::Momentum, &reflect(t.momentum_probabilities()))?;
    Ok((rho, nu))
}

/// Group average `M^av(z) = (1/n²) Σ_{(a,b)} W(a,b)† M(z + (a,b)) W(a,b)`.
///
/// The average is covariant, so it is evaluated once at the origin cell and transported
/// to the other cells by conjugation.
pub fn covariant_average(m: &JointObservable) -> Result<JointObservable> {
    let grid = m.grid;
    let n = grid.n();
    if n > MAX_TABLE_N {
        return Err(Error::TableTooLarge {
            n,
            max: MAX_TABLE_N,
        });
    }
    let deviation = m.normalization_deviation();
    if deviation > NORMALIZATION_TOL {
        return Err(Error::NotNormalized { deviation });
    }
    let c = grid.center();
    let mut origin = CMatrix::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            let w = weyl(grid, a as i64, b as i64);
            origin += w.conjugate_adjoint(&m.cell_effect((c + a) % n, (c + b) % n));
        }
    }
    origin /= Complex64::new((n * n) as f64, 0.0);
    let origin = (&origin + origin.adjoint()) * Complex64::new(0.5, 0.0);
    let cells = (0..n * n)
        .map(|i| cell_displacement(grid, i / n, i % n).conjugate(&origin))
        .collect();
    JointObservable::from_table(grid, cells)
}

/// Largest `‖W(a,b) G(z) W(a,b)† - G(z + (a,b))‖` over all cells and shifts.
pub fn covariance_defect(g: &JointObservable) -> f64 {
    let grid = g.grid;
    let n = grid.n();
    let table = g.table();
    let mut worst: f64 = 0.0;
    for a in 0..n {
        for b in 0..n {
            let w = weyl(grid, a as i64, b as i64);
            for j in 0..n {
                for k in 0..n {
                    let lhs = w.conjugate(&table[j * n + k]);
                    let rhs = &table[((j + a) % n) * n + (k + b) % n];
                    worst = worst.max(max_abs(&(lhs - rhs)));
                }
            }
        }
    }
    worst
}

/// Rank of the family `{W T W†}` in the real space of Hermitian matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct CompletenessReport {
    pub complete: bool,
    pub rank: usize,
    pub dimension: usize,
    pub largest_singular_value: f64,
}

/// Relative singular-value threshold of the rank test.
pub const RANK_THRESHOLD: f64 = 1e-8;

pub fn is_informationally_complete(t: &DensityOperator) -> CompletenessReport {
    let grid = t.grid();
    let n = grid.n();
    let tm = t.to_matrix();
    // Rows are flattened (re, im) parts of each conjugate; real inner products of rows
    // are Re tr(A B) for Hermitian A, B.
    let mut rows = DMatrix::<f64>::zeros(n * n, 2 * n * n);
    for j in 0..n {
        for k in 0..n {
            let a = cell_displacement(grid, j, k).conjugate(&tm);
            let r = j * n + k;
            for (i, z) in a.iter().enumerate() {
                rows[(r, 2 * i)] = z.re;
                rows[(r, 2 * i + 1)] = z.im;
            }
        }
    }
    let sv = rows.singular_values();
    let largest = sv.iter().copied().fold(0.0, f64::max);
    let rank = sv.iter().filter(|s| **s > RANK_THRESHOLD * largest).count();
    CompletenessReport {
        complete: rank == n * n,
        rank,
        dimension: n * n,
        largest_singular_value: largest,
    }
}

/// Outcome probabilities `p(j, k) = tr[S G(j, k)]`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeTable {
    n: usize,
    probabilities: Vec<f64>,
}

impl OutcomeTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, j: usize, k: usize) -> f64 {
        self.probabilities[j * self.n + k]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.probabilities
    }

    /// `Σ_k p(j, k)`.
    pub fn position_marginal(&self) -> Vec<f64> {
        (0..self.n)
            .map(|j| {
                self.probabilities[j * self.n..(j + 1) * self.n]
                    .iter()
                    .sum()
            })
            .collect()
    }

    /// `Σ_j p(j, k)`.
    pub fn momentum_marginal(&self) -> Vec<f64> {
        (0..self.n)
            .map(|k| {
                (0..self.n)
                    .map(|j| self.probabilities[j * self.n + k])
                    .sum()
            })
            .collect()
    }

    pub fn region_probability(&self, region: &PhaseRegion) -> f64 {
        region.cells().map(|(j, k)| self.get(j, k)).sum()
    }
}

fn trace_product(a: &CMatrix, b: &CMatrix) -> f64 {
    let n = a.nrows();
    let mut acc = 0.0;
    for r in 0..n {
        for c in 0..n {
            acc += (a[(r, c)] * b[(c, r)]).re;
        }
    }
    acc
}

pub fn outcome_distribution(g: &JointObservable, s: &DensityOperator) -> Result<OutcomeTable> {
    g.grid.check_same(&s.grid())?;
    let n = g.grid.n();
    let sm = s.to_matrix();
    let mut probabilities = Vec::with_capacity(n * n);
    for j in 0..n {
        for k in 0..n {
            let p = trace_product(&sm, &g.cell_effect(j, k));
            if p < -NEGATIVE_PROBABILITY_TOL {
                return Err(Error::NegativeProbability {
                    q: j,
                    p: k,
                    value: p,
                });
            }
            probabilities.push(p.max(0.0));
        }
    }
    let total: f64 = probabilities.iter().sum();
    if (total - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::NotNormalized {
            deviation: (total - 1.0).abs(),
        });
    }
    probabilities.iter_mut().for_each(|p| *p /= total);
    Ok(OutcomeTable { n, probabilities })
}

/// Inverse-CDF draws from a table, cells ordered row-major in `(j, k)`.
pub fn sample_table(table: &OutcomeTable, count: usize, seed: u64) -> Result<Vec<(usize, usize)>> {
    if count == 0 {
        return Err(Error::InvalidParameter {
            name: "count",
            reason: "must be positive".into(),
        });
    }
    let n = table.n;
    let mut cdf = Vec::with_capacity(n * n);
    let mut acc = 0.0;
    for p in &table.probabilities {
        acc += p;
        cdf.push(acc);
    }
    let last = cdf.len() - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|_| {
            let u: f64 = rng.gen::<f64>() * acc;
            let idx = cdf.partition_point(|c| *c <= u).min(last);
            (idx / n, idx % n)
        })
        .collect())
}

pub fn sample_outcomes(
    g: &JointObservable,
    s: &DensityOperator,
    count: usize,
    seed: u64,
) -> Result<Vec<(usize, usize)>> {
    if count == 0 {
        return Err(Error::InvalidParameter {
            name: "count",
            reason: "must be positive".into(),
        });
    }
    sample_table(&outcome_distribution(g, s)?, count, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{lattice_gaussian, GaussianParams, StateVector};

    fn gaussian(grid: GridSpec) -> DensityOperator {
        DensityOperator::pure(lattice_gaussian(grid, GaussianParams::chirped(0.5, 0.0)).unwrap())
            .unwrap()
    }

    #[test]
    fn maximally_mixed_cells() {
        let g = GridSpec::symmetric(8).unwrap();
        let obs = covariant_observable(&DensityOperator::maximally_mixed(g));
        let expect = CMatrix::identity(8, 8) / Complex64::new(64.0, 0.0);
        for j in 0..8 {
            for k in 0..8 {
                assert!(max_abs(&(obs.cell_effect(j, k) - &expect)) < 1e-15);
            }
        }
    }

    #[test]
    fn pure_cells_are_rank_one() {
        let g = GridSpec::symmetric(8).unwrap();
        let obs = covariant_observable(&gaussian(g));
        let e = Effect::from_matrix(g, obs.cell_effect(3, 6)).unwrap();
        let ev = e.eigenvalues();
        assert!((ev[7] - 1.0 / 8.0).abs() < 1e-12);
        assert!(ev[6].abs() < 1e-12);
        assert!((e.trace() - 1.0 / 8.0).abs() < 1e-12);
    }

    #[test]
    fn empty_and_full_regions() {
        let g = GridSpec::symmetric(8).unwrap();
        let obs = covariant_observable(&gaussian(g));
        let full = effect_of_region(&obs, &PhaseRegion::full(g)).unwrap();
        assert!(max_abs(&(full.to_matrix() - CMatrix::identity(8, 8))) < 1e-12);
        let empty = effect_of_region(&obs, &PhaseRegion::empty(g)).unwrap();
        assert_eq!(empty.norm(), 0.0);
    }

    #[test]
    fn average_matches_direct_formula() {
        // brute-force evaluation of the averaging formula at every cell
        let g = GridSpec::symmetric(4).unwrap();
        let n = 4;
        let mut cells = Vec::new();
        for j in 0..n {
            for k in 0..n {
                // a non-covariant table: sharp position cell j split over momentum
                let mut m = CMatrix::zeros(n, n);
                let w = if k == 0 { 0.7 } else { 0.1 };
                m[(j, j)] = Complex64::new(w, 0.0);
                cells.push(m);
            }
        }
        let m = JointObservable::from_table(g, cells).unwrap();
        let avg = covariant_average(&m).unwrap();
        for j in 0..n {
            for k in 0..n {
                let mut direct = CMatrix::zeros(n, n);
                for a in 0..n {
                    for b in 0..n {
                        let w = weyl(g, a as i64, b as i64).to_matrix();
                        direct += w.adjoint() * m.cell_effect((j + a) % n, (k + b) % n) * &w;
                    }
                }
                direct /= Complex64::new((n * n) as f64, 0.0);
                assert!(max_abs(&(avg.cell_effect(j, k) - direct)) < 1e-13);
            }
        }
        assert!(covariance_defect(&avg) < 1e-13);
        assert!(covariance_defect(&m) > 1e-3);
    }

    #[test]
    fn table_guards() {
        let g = GridSpec::symmetric(4).unwrap();
        let half = CMatrix::identity(4, 4) / Complex64::new(8.0, 0.0);
        assert!(matches!(
            JointObservable::from_table(g, vec![half; 16]),
            Err(Error::NotNormalized { .. })
        ));
        let big = GridSpec::symmetric(34).unwrap();
        assert!(matches!(
            JointObservable::from_table(big, vec![]),
            Err(Error::TableTooLarge { .. })
        ));
    }

    #[test]
    fn completeness_of_position_projector() {
        let g = GridSpec::symmetric(8).unwrap();
        let t = DensityOperator::pure(StateVector::basis(g, 3)).unwrap();
        let r = is_informationally_complete(&t);
        assert_eq!(r.rank, 8);
        assert!(!r.complete);
    }

    #[test]
    fn sampling_rejects_zero_count() {
        let g = GridSpec::symmetric(8).unwrap();
        let t = DensityOperator::maximally_mixed(g);
        let obs = covariant_observable(&t);
        assert!(sample_outcomes(&obs, &t, 0, 1).is_err());
        let a = sample_outcomes(&obs, &t, 100, 42).unwrap();
        assert_eq!(a, sample_outcomes(&obs, &t, 100, 42).unwrap());
        assert_ne!(a, sample_outcomes(&obs, &t, 100, 43).unwrap());
    }
}
