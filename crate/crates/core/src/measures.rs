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

//! Probability measures on the lattice circle and rasterized Borel sets.
//!
//! Coordinates are centered, so translating by `s` cells moves cell `c` to `c + s` and
//! the sum of the coordinates of cells `c1`, `c2` is the coordinate of `c1 + c2 - n/2`.

use crate::error::{Error, Result};
use crate::lattice::{Axis, GridSpec};

/// Moments are flagged unreliable once the boundary band carries more than this mass.
pub const BOUNDARY_MASS_LIMIT: f64 = 1e-9;

/// A subset of lattice cells.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GridSet {
    grid_n: usize,
    members: Vec<bool>,
}

impl GridSet {
    pub fn empty(grid: GridSpec) -> Self {
        Self {
            grid_n: grid.n(),
            members: vec![false; grid.n()],
        }
    }

    pub fn full(grid: GridSpec) -> Self {
        Self {
            grid_n: grid.n(),
            members: vec![true; grid.n()],
        }
    }

    pub fn from_indices(grid: GridSpec, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut set = Self::empty(grid);
        for i in indices {
            if i >= grid.n() {
                return Err(Error::InvalidParameter {
                    name: "indices",
                    reason: format!("cell {i} is outside 0..{}", grid.n()),
                });
            }
            set.members[i] = true;
        }
        Ok(set)
    }

    pub fn from_mask(members: Vec<bool>) -> Self {
        Self {
            grid_n: members.len(),
            members,
        }
    }

    /// Cells `0..=last`, i.e. all coordinates up to that of `last`.
    pub fn half_line(grid: GridSpec, last: usize) -> Self {
        Self::from_mask((0..grid.n()).map(|j| j <= last).collect())
    }

    /// Cells at nonnegative coordinates.
    pub fn right_half(grid: GridSpec) -> Self {
        Self::from_mask((0..grid.n()).map(|j| j >= grid.center()).collect())
    }

    /// Cells whose coordinate on `axis` lies in `[lo, hi)`.
    pub fn from_interval(grid: GridSpec, axis: Axis, lo: f64, hi: f64) -> Self {
        Self::from_mask(
            (0..grid.n())
                .map(|j| {
                    let x = grid.coordinate(axis, j);
                    x >= lo && x < hi
                })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|m| **m).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members[i % self.grid_n]
    }

    pub fn mask(&self) -> &[bool] {
        &self.members
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter_map(|(i, m)| m.then_some(i))
    }

    pub fn n(&self) -> usize {
        self.grid_n
    }

    /// `X + s`, cyclically.
    pub fn shifted(&self, s: i64) -> Self {
        let n = self.grid_n as i64;
        let mut out = vec![false; self.grid_n];
        for i in self.indices() {
            out[(i as i64 + s).rem_euclid(n) as usize] = true;
        }
        Self::from_mask(out)
    }

    /// `-X`, reflected through the center cell.
    pub fn reflected(&self) -> Self {
        let n = self.grid_n;
        Self::from_mask((0..n).map(|i| self.members[(n - i) % n]).collect())
    }

    pub fn complement(&self) -> Self {
        Self::from_mask(self.members.iter().map(|m| !m).collect())
    }

    pub fn union(&self, other: &GridSet) -> Self {
        Self::from_mask(
            self.members
                .iter()
                .zip(&other.members)
                .map(|(a, b)| *a || *b)
                .collect(),
        )
    }

    pub fn is_subset(&self, other: &GridSet) -> bool {
        self.members
            .iter()
            .zip(&other.members)
            .all(|(a, b)| !*a || *b)
    }

    pub(crate) fn check_grid(&self, grid: &GridSpec) -> Result<()> {
        if self.grid_n == grid.n() {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }
}

/// A first or second moment together with the mass found in the boundary band.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentEstimate {
    pub value: f64,
    pub boundary_mass: f64,
}

impl MomentEstimate {
    pub fn is_reliable(&self) -> bool {
        self.boundary_mass <= BOUNDARY_MASS_LIMIT
    }

    /// The value, or [`Error::TailUnsafe`] when boundary mass makes it meaningless.
    pub fn reliable(self) -> Result<f64> {
        if self.is_reliable() {
            Ok(self.value)
        } else {
            Err(Error::TailUnsafe {
                boundary_mass: self.boundary_mass,
            })
        }
    }
}

/// Probability measure on the lattice: point masses plus a density part.
///
/// The density is stored per unit length, so cell `c` carries `density[c] * spacing`.
#[derive(Debug, Clone, PartialEq)]
pub struct LineMeasure {
    grid: GridSpec,
    axis: Axis,
    atoms: Vec<(usize, f64)>,
    density: Vec<f64>,
}

impl LineMeasure {
    /// Validating constructor: nonnegative parts with total mass one within 1e-12.
    pub fn new(
        grid: GridSpec,
        axis: Axis,
        atoms: Vec<(usize, f64)>,
        density: Vec<f64>,
    ) -> Result<Self> {
        let m = Self::unchecked(grid, axis, atoms, density)?;
        let total = m.total_mass();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter {
                name: "measure",
                reason: format!("total mass {total} differs from 1"),
            });
        }
        Ok(m)
    }

    fn unchecked(
        grid: GridSpec,
        axis: Axis,
        atoms: Vec<(usize, f64)>,
        density: Vec<f64>,
    ) -> Result<Self> {
        if density.len() != grid.n() {
            return Err(Error::InvalidParameter {
                name: "density",
                reason: format!("expected {} entries, got {}", grid.n(), density.len()),
            });
        }
        if density.iter().any(|d| !(d.is_finite() && *d >= 0.0)) {
            return Err(Error::InvalidParameter {
                name: "density",
                reason: "entries must be finite and nonnegative".into(),
            });
        }
        let mut merged = vec![0.0; grid.n()];
        for (c, w) in atoms {
            if c >= grid.n() || !(w.is_finite() && w > 0.0) {
                return Err(Error::InvalidParameter {
                    name: "atoms",
                    reason: format!("bad atom ({c}, {w})"),
                });
            }
            merged[c] += w;
        }
        let atoms = merged
            .into_iter()
            .enumerate()
            .filter(|(_, w)| *w > 0.0)
            .collect();
        Ok(Self {
            grid,
            axis,
            atoms,
            density,
        })
    }

    /// Density part only, rescaled to total mass one.
    pub fn from_density(grid: GridSpec, axis: Axis, density: Vec<f64>) -> Result<Self> {
        let m = Self::unchecked(grid, axis, Vec::new(), density)?;
        m.renormalized()
    }

    /// Measure with the given mass per cell, as a density part, rescaled to mass one.
    pub fn from_cell_masses(grid: GridSpec, axis: Axis, masses: &[f64]) -> Result<Self> {
        let h = grid.spacing(axis);
        Self::from_density(grid, axis, masses.iter().map(|m| m / h).collect())
    }

    /// Atoms only, rescaled to total mass one.
    pub fn from_atoms(grid: GridSpec, axis: Axis, atoms: Vec<(usize, f64)>) -> Result<Self> {
        Self::unchecked(grid, axis, atoms, vec![0.0; grid.n()])?.renormalized()
    }

    pub fn uniform(grid: GridSpec, axis: Axis) -> Self {
        let d = 1.0 / (grid.n() as f64 * grid.spacing(axis));
        Self {
            grid,
            axis,
            atoms: Vec::new(),
            density: vec![d; grid.n()],
        }
    }

    /// Lattice-normalized `(2a/π)^{1/2} exp(-2a x²)`, the squared modulus of `φ_{a,b}`.
    pub fn gaussian_density(grid: GridSpec, axis: Axis, a: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::InvalidParameter {
                name: "a",
                reason: format!("must be positive, got {a}"),
            });
        }
        let density = (0..grid.n())
            .map(|j| {
                let x = grid.coordinate(axis, j);
                (-2.0 * a * x * x).exp()
            })
            .collect();
        Self::from_density(grid, axis, density)
    }

    fn renormalized(mut self) -> Result<Self> {
        let total = self.total_mass();
        if !(total.is_finite() && total > 0.0) {
            return Err(Error::InvalidParameter {
                name: "measure",
                reason: "zero total mass".into(),
            });
        }
        self.atoms.iter_mut().for_each(|a| a.1 /= total);
        self.density.iter_mut().for_each(|d| *d /= total);
        Ok(self)
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn axis(&self) -> Axis {
        self.axis
    }

    pub fn atoms(&self) -> &[(usize, f64)] {
        &self.atoms
    }

    pub fn density(&self) -> &[f64] {
        &self.density
    }

    /// Same cell masses read on the other lattice (or the same one).
    pub fn on_axis(&self, axis: Axis) -> Self {
        let scale = self.grid.spacing(self.axis) / self.grid.spacing(axis);
        Self {
            grid: self.grid,
            axis,
            atoms: self.atoms.clone(),
            density: self.density.iter().map(|d| d * scale).collect(),
        }
    }

    /// Mass carried by each cell.
    pub fn cell_masses(&self) -> Vec<f64> {
        let h = self.grid.spacing(self.axis);
        let mut out: Vec<f64> = self.density.iter().map(|d| d * h).collect();
        for &(c, w) in &self.atoms {
            out[c] += w;
        }
        out
    }

    pub fn total_mass(&self) -> f64 {
        self.cell_masses().iter().sum()
    }

    /// `μ(X)`.
    pub fn mass(&self, set: &GridSet) -> Result<f64> {
        set.check_grid(&self.grid)?;
        Ok(self
            .cell_masses()
            .iter()
            .zip(set.mask())
            .filter(|(_, m)| **m)
            .map(|(w, _)| w)
            .sum())
    }

    /// The measure moved by `s` cells: `μ_s(A) = μ(A - s)`.
    pub fn translate(&self, s: i64) -> Self {
        let n = self.grid.n() as i64;
        let mv = |c: usize| (c as i64 + s).rem_euclid(n) as usize;
        let mut density = vec![0.0; self.grid.n()];
        for (c, d) in self.density.iter().enumerate() {
            density[mv(c)] = *d;
        }
        let mut atoms: Vec<(usize, f64)> = self.atoms.iter().map(|&(c, w)| (mv(c), w)).collect();
        atoms.sort_by_key(|a| a.0);
        Self {
            grid: self.grid,
            axis: self.axis,
            atoms,
            density,
        }
    }

    /// Supremum distance between cell-mass tables.
    pub fn max_mass_difference(&self, other: &LineMeasure) -> Result<f64> {
        self.grid.check_same(&other.grid)?;
        Ok(self
            .cell_masses()
            .iter()
            .zip(other.cell_masses())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    fn boundary_mass(&self) -> f64 {
        let n = self.grid.n();
        let band = (n / 64).max(1);
        let masses = self.cell_masses();
        masses[..band].iter().chain(&masses[n - band..]).sum()
    }
}

/// Dirac measure at the cell nearest to `x` on the position lattice.
pub fn dirac(grid: GridSpec, x: f64) -> Result<LineMeasure> {
    dirac_on(grid, Axis::Position, x)
}

pub fn dirac_on(grid: GridSpec, axis: Axis, x: f64) -> Result<LineMeasure> {
    let c = grid.nearest_cell(axis, x)?;
    Ok(LineMeasure {
        grid,
        axis,
        atoms: vec![(c, 1.0)],
        density: vec![0.0; grid.n()],
    })
}

/// `μ(X - shift)` with cyclic set translation.
pub fn translated_mass(mu: &LineMeasure, set: &GridSet, shift: i64) -> Result<f64> {
    set.check_grid(&mu.grid)?;
    let masses = mu.cell_masses();
    Ok(translated_mass_table(&masses, set, shift))
}

/// Sums in measure-cell order so that shifting both the set and the shift gives a
/// bit-identical result.
pub(crate) fn translated_mass_table(masses: &[f64], set: &GridSet, shift: i64) -> f64 {
    let n = masses.len() as i64;
    let s = shift.rem_euclid(n) as usize;
    let mask = set.mask();
    let n = n as usize;
    masses
        .iter()
        .enumerate()
        .filter(|(u, _)| mask[(u + s) % n])
        .map(|(_, w)| w)
        .sum()
}

/// Cyclic convolution on the centered lattice.
pub fn convolve(mu1: &LineMeasure, mu2: &LineMeasure) -> Result<LineMeasure> {
    mu1.grid.check_same(&mu2.grid)?;
    if mu1.axis != mu2.axis {
        return Err(Error::AxisMismatch);
    }
    let grid = mu1.grid;
    let n = grid.n();
    let h = grid.spacing(mu1.axis);
    let sum = |a: usize, b: usize| (a + b + n - n / 2) % n;

    let mut atoms = Vec::new();
    for &(c1, w1) in &mu1.atoms {
        for &(c2, w2) in &mu2.atoms {
            atoms.push((sum(c1, c2), w1 * w2));
        }
    }

    let mut density = vec![0.0; n];
    for &(c, w) in &mu1.atoms {
        for (i, d) in mu2.density.iter().enumerate() {
            density[sum(c, i)] += w * d;
        }
    }
    for &(c, w) in &mu2.atoms {
        for (i, d) in mu1.density.iter().enumerate() {
            density[sum(c, i)] += w * d;
        }
    }
    for (i, d1) in mu1.density.iter().enumerate() {
        if *d1 == 0.0 {
            continue;
        }
        for (j, d2) in mu2.density.iter().enumerate() {
            density[sum(i, j)] += d1 * d2 * h;
        }
    }
    LineMeasure::unchecked(grid, mu1.axis, atoms, density)
}

/// Mean with linear (non-periodic) coordinates.
pub fn mean(mu: &LineMeasure) -> MomentEstimate {
    let masses = mu.cell_masses();
    let total: f64 = masses.iter().sum();
    let value = masses
        .iter()
        .enumerate()
        .map(|(c, w)| w * mu.grid.coordinate(mu.axis, c))
        .sum::<f64>()
        / total;
    MomentEstimate {
        value,
        boundary_mass: mu.boundary_mass(),
    }
}

/// Variance with linear (non-periodic) coordinates.
pub fn variance(mu: &LineMeasure) -> MomentEstimate {
    let m = mean(mu);
    let masses = mu.cell_masses();
    let total: f64 = masses.iter().sum();
    let value = masses
        .iter()
        .enumerate()
        .map(|(c, w)| {
            let d = mu.grid.coordinate(mu.axis, c) - m.value;
            w * d * d
        })
        .sum::<f64>()
        / total;
    MomentEstimate {
        value,
        boundary_mass: m.boundary_mass,
    }
}
