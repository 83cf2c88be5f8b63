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

//! Seeded generators of random lattice objects for property checks and benchmarks.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::lattice::{Axis, GaussianParams, GridSpec, StateVector};
use crate::measures::{GridSet, LineMeasure};
use crate::operators::{hermitian_eigenvalues, CMatrix, DensityOperator};
use crate::phasespace::JointObservable;

fn normal_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Unit vector drawn uniformly from the sphere in `C^n`.
pub fn state<R: Rng + ?Sized>(grid: GridSpec, rng: &mut R) -> StateVector {
    let amps = (0..grid.n()).map(|_| normal_complex(rng)).collect();
    StateVector::new(grid, amps)
        .and_then(StateVector::normalized)
        .expect("gaussian vector is nonzero")
}

/// Square matrix with i.i.d. complex normal entries.
pub fn ginibre<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(n, n, |_, _| normal_complex(rng))
}

pub fn hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let g = ginibre(n, rng);
    (&g + g.adjoint()) * Complex64::new(0.5, 0.0)
}

/// Full-rank density operator `G G† / tr(G G†)`.
pub fn density<R: Rng + ?Sized>(grid: GridSpec, rng: &mut R) -> DensityOperator {
    let g = ginibre(grid.n(), rng);
    let m = &g * g.adjoint();
    let tr: f64 = m.diagonal().iter().map(|z| z.re).sum();
    DensityOperator::from_matrix(grid, &(m / Complex64::new(tr, 0.0)))
        .expect("Wishart matrix is a valid density")
}

/// Measure with a few random atoms and a random density part.
pub fn measure<R: Rng + ?Sized>(grid: GridSpec, axis: Axis, rng: &mut R) -> LineMeasure {
    let n = grid.n();
    let atoms = (0..rng.gen_range(0..4))
        .map(|_| (rng.gen_range(0..n), rng.gen_range(0.1..1.0)))
        .collect::<Vec<_>>();
    let density_weight: f64 = rng.gen_range(0.1..1.0);
    let raw: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
    let raw_total: f64 = raw.iter().sum::<f64>() * grid.spacing(axis);
    let atom_total: f64 = atoms.iter().map(|a| a.1).sum();
    let total = atom_total + density_weight;
    LineMeasure::new(
        grid,
        axis,
        atoms.into_iter().map(|(c, w)| (c, w / total)).collect(),
        raw.into_iter()
            .map(|d| d / raw_total * density_weight / total)
            .collect(),
    )
    .or_else(|_| {
        // rounding of the split can push the total mass a few ulps past 1e-12
        let m = LineMeasure::from_cell_masses(grid, axis, &vec![1.0; n])?;
        Ok::<_, crate::Error>(m)
    })
    .expect("uniform fallback is valid")
}

pub fn set<R: Rng + ?Sized>(grid: GridSpec, rng: &mut R) -> GridSet {
    GridSet::from_mask((0..grid.n()).map(|_| rng.gen_bool(0.5)).collect())
}

/// Gaussian parameters that fit comfortably on `grid`.
pub fn tail_safe_gaussian<R: Rng + ?Sized>(grid: GridSpec, rng: &mut R) -> GaussianParams {
    loop {
        let p = GaussianParams::new(
            rng.gen_range(0.2..2.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-3.0..3.0),
        );
        if p.tail_mass(&grid) < 1e-30 {
            return p;
        }
    }
}

/// Normalized superposition of a few tail-safe Gaussians.
pub fn gaussian_superposition<R: Rng + ?Sized>(
    grid: GridSpec,
    terms: usize,
    rng: &mut R,
) -> Result<StateVector> {
    let mut acc = vec![Complex64::new(0.0, 0.0); grid.n()];
    for _ in 0..terms.max(1) {
        let c = normal_complex(rng);
        let psi = crate::lattice::gaussian_from_params(grid, tail_safe_gaussian(grid, rng))?;
        acc.iter_mut()
            .zip(psi.amplitudes())
            .for_each(|(a, z)| *a += c * z);
    }
    StateVector::new(grid, acc)?.normalized()
}

/// Random normalized effect table: `B_z ↦ A^{-1/2} B_z A^{-1/2}` with `A = Σ_z B_z`.
pub fn normalized_table<R: Rng + ?Sized>(grid: GridSpec, rng: &mut R) -> Result<JointObservable> {
    let n = grid.n();
    let cells: Vec<CMatrix> = (0..n * n)
        .map(|_| {
            let g = ginibre(n, rng);
            &g * g.adjoint()
        })
        .collect();
    let total = cells.iter().fold(CMatrix::zeros(n, n), |acc, c| acc + c);
    let isqrt = inverse_sqrt(&total);
    let cells = cells
        .iter()
        .map(|c| {
            let m = &isqrt * c * &isqrt;
            (&m + m.adjoint()) * Complex64::new(0.5, 0.0)
        })
        .collect();
    JointObservable::from_table(grid, cells)
}

fn inverse_sqrt(m: &CMatrix) -> CMatrix {
    let eig = m.clone().symmetric_eigen();
    let n = m.nrows();
    let mut out = CMatrix::zeros(n, n);
    for (i, &l) in eig.eigenvalues.iter().enumerate() {
        let v = DVector::from_iterator(n, eig.eigenvectors.column(i).iter().copied());
        out += (&v * v.adjoint()) * Complex64::new(1.0 / l.sqrt(), 0.0);
    }
    debug_assert!(hermitian_eigenvalues(m)[0] > 0.0);
    out
}
