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

//! Periodic lattice model of the real line.
//!
//! Positions sit at `x_j = (j - n/2) dx` and momenta at `p_k = (k - n/2) dp` with
//! `dp = 2π / (n dx)`. Amplitudes carry a `√dx` factor so that the Euclidean norm of
//! a vector equals the L² norm of the sampled wave function.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;
use statrs::function::erf::erfc;

use crate::error::{Error, Result};

/// Largest tail mass a continuum Gaussian may leave outside the lattice.
pub const TAIL_MASS_LIMIT: f64 = 1e-12;

/// Which of the two dual lattices a table or measure lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    Position,
    Momentum,
}

/// An `n`-point periodic position lattice together with its dual momentum lattice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    n: usize,
    dx: f64,
}

impl GridSpec {
    pub fn new(n: usize, dx: f64) -> Result<Self> {
        if n < 4 {
            return Err(Error::InvalidGrid(format!(
                "n = {n} is below the minimum of 4"
            )));
        }
        if n % 2 != 0 {
            return Err(Error::InvalidGrid(format!("n = {n} must be even")));
        }
        if !(dx.is_finite() && dx > 0.0) {
            return Err(Error::InvalidGrid(format!("dx = {dx} must be positive")));
        }
        Ok(Self { n, dx })
    }

    /// Grid with `dx = dp = sqrt(2π / n)`, on which position and momentum points coincide.
    pub fn symmetric(n: usize) -> Result<Self> {
        Self::new(n, (2.0 * PI / n as f64).sqrt())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn dp(&self) -> f64 {
        2.0 * PI / (self.n as f64 * self.dx)
    }

    pub fn spacing(&self, axis: Axis) -> f64 {
        match axis {
            Axis::Position => self.dx,
            Axis::Momentum => self.dp(),
        }
    }

    /// Index of the cell holding the coordinate origin.
    pub fn center(&self) -> usize {
        self.n / 2
    }

    /// Signed offset of cell `j` from the center cell.
    pub fn offset(&self, j: usize) -> i64 {
        j as i64 - (self.n / 2) as i64
    }

    /// Reduces a signed cell index modulo `n`.
    pub fn wrap(&self, j: i64) -> usize {
        j.rem_euclid(self.n as i64) as usize
    }

    /// Cell index of `-x_j`, i.e. the reflection through the center cell.
    pub fn reflect(&self, j: usize) -> usize {
        (self.n - j) % self.n
    }

    pub fn position(&self, j: usize) -> f64 {
        self.offset(j) as f64 * self.dx
    }

    pub fn momentum(&self, k: usize) -> f64 {
        self.offset(k) as f64 * self.dp()
    }

    pub fn coordinate(&self, axis: Axis, j: usize) -> f64 {
        self.offset(j) as f64 * self.spacing(axis)
    }

    pub fn positions(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.position(j)).collect()
    }

    pub fn momenta(&self) -> Vec<f64> {
        (0..self.n).map(|k| self.momentum(k)).collect()
    }

    /// Closed interval covered by the cells of `axis`, measured to the outer cell edges.
    pub fn range(&self, axis: Axis) -> (f64, f64) {
        let h = self.spacing(axis);
        (
            self.coordinate(axis, 0) - 0.5 * h,
            self.coordinate(axis, self.n - 1) + 0.5 * h,
        )
    }

    /// Nearest cell to `x`; ties resolve toward the lower index.
    pub fn nearest_cell(&self, axis: Axis, x: f64) -> Result<usize> {
        let h = self.spacing(axis);
        let lo = self.coordinate(axis, 0);
        let hi = self.coordinate(axis, self.n - 1);
        if !x.is_finite() || x < lo - 0.5 * h || x > hi + 0.5 * h {
            return Err(Error::OutOfRange { x, lo, hi });
        }
        let t = (x - lo) / h;
        let below = t.floor();
        let frac = t - below;
        let idx = if frac > 0.5 { below + 1.0 } else { below };
        Ok((idx.max(0.0) as usize).min(self.n - 1))
    }

    pub fn check_same(&self, other: &GridSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }
}

/// Construct a grid; convenience wrapper around [`GridSpec::new`].
pub fn make_grid(n: usize, dx: f64) -> Result<GridSpec> {
    GridSpec::new(n, dx)
}

/// Lattice wave function; component `j` stores `ψ(x_j) √dx`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    grid: GridSpec,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn new(grid: GridSpec, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != grid.n() {
            return Err(Error::InvalidParameter {
                name: "amplitudes",
                reason: format!("expected {} entries, got {}", grid.n(), amplitudes.len()),
            });
        }
        Ok(Self { grid, amplitudes })
    }

    /// Position basis vector concentrated on cell `m`.
    pub fn basis(grid: GridSpec, m: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); grid.n()];
        amplitudes[m % grid.n()] = Complex64::new(1.0, 0.0);
        Self { grid, amplitudes }
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn normalized(mut self) -> Result<Self> {
        let norm = self.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::InvalidParameter {
                name: "amplitudes",
                reason: "cannot normalize a zero vector".into(),
            });
        }
        for z in &mut self.amplitudes {
            *z /= norm;
        }
        Ok(self)
    }

    /// `⟨self, other⟩`, antilinear in `self`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        self.grid.check_same(&other.grid)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Probability mass per cell, `|ψ_j|²`.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|z| z.norm_sqr()).collect()
    }

    /// Sampled wave-function values `ψ(x_j)` (amplitudes divided by `√dx`).
    pub fn wave_function(&self, axis: Axis) -> Vec<Complex64> {
        let s = self.grid.spacing(axis).sqrt();
        self.amplitudes.iter().map(|z| z / s).collect()
    }
}

fn centered_sign(j: usize) -> f64 {
    if j % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn centered_dft(grid: GridSpec, input: &[Complex64], inverse: bool) -> Vec<Complex64> {
    let n = grid.n();
    // Centering reduces to alternating signs before and after a plain FFT.
    let mut buf: Vec<Complex64> = input
        .iter()
        .enumerate()
        .map(|(j, z)| z * centered_sign(j))
        .collect();
    let mut planner = FftPlanner::<f64>::new();
    let fft = if inverse {
        planner.plan_fft_inverse(n)
    } else {
        planner.plan_fft_forward(n)
    };
    fft.process(&mut buf);
    let scale = centered_sign(n / 2) / (n as f64).sqrt();
    buf.iter_mut()
        .enumerate()
        .for_each(|(k, z)| *z *= scale * centered_sign(k));
    buf
}

/// Unitary centered discrete Fourier transform.
///
/// `(Fψ)_k = n^{-1/2} Σ_j ψ_j exp(-i p_k x_j)`. The output is read on the momentum
/// lattice; divided by `√dp` it samples the continuum transform `ψ̂(p_k)`.
pub fn fourier_transform(psi: &StateVector) -> StateVector {
    StateVector {
        grid: psi.grid,
        amplitudes: centered_dft(psi.grid, &psi.amplitudes, false),
    }
}

pub fn inverse_fourier_transform(psi: &StateVector) -> StateVector {
    StateVector {
        grid: psi.grid,
        amplitudes: centered_dft(psi.grid, &psi.amplitudes, true),
    }
}

/// Parameters of `(2a/π)^{1/4} exp(i b_lin x) exp(-(a + i b)(x - c)²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianParams {
    pub a: f64,
    pub b: f64,
    pub b_lin: f64,
    pub c: f64,
}

impl GaussianParams {
    pub fn new(a: f64, b: f64, b_lin: f64, c: f64) -> Self {
        Self { a, b, b_lin, c }
    }

    /// Centered chirped Gaussian `φ_{a,b}`.
    pub fn chirped(a: f64, b: f64) -> Self {
        Self::new(a, b, 0.0, 0.0)
    }

    pub fn position_variance(&self) -> f64 {
        0.25 / self.a
    }

    pub fn momentum_variance(&self) -> f64 {
        (self.a * self.a + self.b * self.b) / self.a
    }

    pub fn evaluate(&self, x: f64) -> Complex64 {
        let pref = (2.0 * self.a / PI).powf(0.25);
        let d = x - self.c;
        let exponent = Complex64::new(-self.a * d * d, self.b_lin * x - self.b * d * d);
        pref * exponent.exp()
    }

    /// Continuum mass outside the position and momentum ranges of `grid`.
    pub fn tail_mass(&self, grid: &GridSpec) -> f64 {
        let outside = |mean: f64, var: f64, (lo, hi): (f64, f64)| {
            let s = (2.0 * var).sqrt();
            0.5 * erfc((mean - lo) / s) + 0.5 * erfc((hi - mean) / s)
        };
        let q = outside(self.c, self.position_variance(), grid.range(Axis::Position));
        let p = outside(
            self.b_lin,
            self.momentum_variance(),
            grid.range(Axis::Momentum),
        );
        q.max(p)
    }

    fn validate(&self) -> Result<()> {
        if !(self.a.is_finite() && self.a > 0.0) {
            return Err(Error::InvalidParameter {
                name: "a",
                reason: format!("width parameter must be positive, got {}", self.a),
            });
        }
        if !(self.b.is_finite() && self.b_lin.is_finite() && self.c.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "b",
                reason: "chirp, boost and center must be finite".into(),
            });
        }
        Ok(())
    }
}

/// Sampled, renormalized Gaussian state; rejects grids that cannot hold it.
pub fn gaussian_state(grid: GridSpec, a: f64, b: f64, b_lin: f64, c: f64) -> Result<StateVector> {
    gaussian_from_params(grid, GaussianParams::new(a, b, b_lin, c))
}

pub fn gaussian_from_params(grid: GridSpec, params: GaussianParams) -> Result<StateVector> {
    params.validate()?;
    let tail = params.tail_mass(&grid);
    if tail >= TAIL_MASS_LIMIT {
        return Err(Error::TailMass {
            tail_mass: tail,
            limit: TAIL_MASS_LIMIT,
        });
    }
    sample_gaussian(grid, params)
}

/// Gaussian sampled on the torus without the tail-mass admission check.
///
/// Suitable for statements that are exact on the lattice (covariance, margins,
/// normalization); not for comparisons against continuum formulas.
pub fn lattice_gaussian(grid: GridSpec, params: GaussianParams) -> Result<StateVector> {
    params.validate()?;
    sample_gaussian(grid, params)
}

fn sample_gaussian(grid: GridSpec, params: GaussianParams) -> Result<StateVector> {
    let sq = grid.dx().sqrt();
    let amplitudes = (0..grid.n())
        .map(|j| params.evaluate(grid.position(j)) * sq)
        .collect();
    StateVector::new(grid, amplitudes)?.normalized()
}

/// Closed-form Fourier transform of the centered Gaussian `φ_{a,b}`.
pub fn analytic_gaussian_transform(a: f64, b: f64, p: f64) -> Complex64 {
    let s = a * a + b * b;
    let modulus = (a / (2.0 * PI * s)).powf(0.25) * (-a * p * p / (4.0 * s)).exp();
    let phase = b * p * p / (4.0 * s) - 0.5 * (b / a).atan();
    Complex64::from_polar(modulus, phase)
}
