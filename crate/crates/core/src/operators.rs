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

//! Operators on the lattice Hilbert space `C^n`: Hermitian operators and effects,
//! density operators, and the projective Weyl system.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::{fourier_transform, Axis, GridSpec, StateVector};

pub type CMatrix = DMatrix<Complex64>;

/// Maximum `|A - A†|` entry accepted as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Slack on the `[0, 1]` spectrum of an effect.
pub const POSITIVITY_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// `exp(2πi r / m)` with the integer numerator reduced first, so that lattice phases are
/// exactly periodic.
pub(crate) fn root_of_unity(r: i64, m: i64) -> Complex64 {
    let r = r.rem_euclid(m);
    Complex64::from_polar(1.0, 2.0 * PI * r as f64 / m as f64)
}

/// Dense matrix of the centered Fourier transform, `F_{kj} = n^{-1/2} exp(-i p_k x_j)`.
pub fn fourier_matrix(grid: GridSpec) -> CMatrix {
    let n = grid.n();
    let s = 1.0 / (n as f64).sqrt();
    CMatrix::from_fn(n, n, |k, j| {
        root_of_unity(-grid.offset(k) * grid.offset(j), n as i64) * s
    })
}

/// Largest entry modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest `|A_{ij} - conj(A_{ji})|`.
pub fn hermitian_deviation(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut dev: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

/// Ascending eigenvalues of a Hermitian matrix.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let mut ev: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    ev
}

/// Operator norm of a Hermitian matrix: its largest absolute eigenvalue.
pub fn operator_norm(m: &CMatrix) -> Result<f64> {
    let deviation = hermitian_deviation(m);
    let scale = m.iter().map(|z| z.norm()).fold(1.0, f64::max);
    if deviation > HERMITIAN_TOL * scale {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(hermitian_eigenvalues(&hermitian_part(m))
        .into_iter()
        .map(f64::abs)
        .fold(0.0, f64::max))
}

/// Storage of a Hermitian operator.
///
/// Position effects are diagonal in the position basis and momentum effects in the
/// momentum basis; both keep only the diagonal.
#[derive(Debug, Clone, PartialEq)]
pub enum Representation {
    PositionDiagonal(Vec<f64>),
    MomentumDiagonal(Vec<f64>),
    Dense(CMatrix),
}

#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    grid: GridSpec,
    repr: Representation,
}

impl HermitianOperator {
    pub fn from_matrix(grid: GridSpec, matrix: CMatrix) -> Result<Self> {
        let n = grid.n();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::InvalidParameter {
                name: "matrix",
                reason: format!(
                    "expected {n}x{n}, got {}x{}",
                    matrix.nrows(),
                    matrix.ncols()
                ),
            });
        }
        let deviation = hermitian_deviation(&matrix);
        if deviation > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self {
            grid,
            repr: Representation::Dense(hermitian_part(&matrix)),
        })
    }

    pub fn diagonal(grid: GridSpec, axis: Axis, diag: Vec<f64>) -> Result<Self> {
        if diag.len() != grid.n() {
            return Err(Error::InvalidParameter {
                name: "diagonal",
                reason: format!("expected {} entries, got {}", grid.n(), diag.len()),
            });
        }
        let repr = match axis {
            Axis::Position => Representation::PositionDiagonal(diag),
            Axis::Momentum => Representation::MomentumDiagonal(diag),
        };
        Ok(Self { grid, repr })
    }

    pub fn identity(grid: GridSpec) -> Self {
        Self {
            grid,
            repr: Representation::PositionDiagonal(vec![1.0; grid.n()]),
        }
    }

    pub fn zero(grid: GridSpec) -> Self {
        Self {
            grid,
            repr: Representation::PositionDiagonal(vec![0.0; grid.n()]),
        }
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn representation(&self) -> &Representation {
        &self.repr
    }

    /// Diagonal entries if the operator is stored diagonal in the basis of `axis`.
    pub fn diagonal_in(&self, axis: Axis) -> Option<&[f64]> {
        match (&self.repr, axis) {
            (Representation::PositionDiagonal(d), Axis::Position) => Some(d),
            (Representation::MomentumDiagonal(d), Axis::Momentum) => Some(d),
            _ => None,
        }
    }

    pub fn to_matrix(&self) -> CMatrix {
        let n = self.grid.n();
        match &self.repr {
            Representation::Dense(m) => m.clone(),
            Representation::PositionDiagonal(d) => {
                CMatrix::from_fn(n, n, |i, j| if i == j { d[i].into() } else { ZERO })
            }
            Representation::MomentumDiagonal(d) => {
                // F† diag(d) F
                let f = fourier_matrix(self.grid);
                let mut scaled = f.clone();
                for (k, mut row) in scaled.row_iter_mut().enumerate() {
                    row *= Complex64::new(d[k], 0.0);
                }
                f.adjoint() * scaled
            }
        }
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        match &self.repr {
            Representation::PositionDiagonal(d) | Representation::MomentumDiagonal(d) => {
                let mut ev = d.clone();
                ev.sort_by(|a, b| a.total_cmp(b));
                ev
            }
            Representation::Dense(m) => hermitian_eigenvalues(m),
        }
    }

    pub fn norm(&self) -> f64 {
        match &self.repr {
            Representation::PositionDiagonal(d) | Representation::MomentumDiagonal(d) => {
                d.iter().map(|v| v.abs()).fold(0.0, f64::max)
            }
            Representation::Dense(m) => hermitian_eigenvalues(m)
                .into_iter()
                .map(f64::abs)
                .fold(0.0, f64::max),
        }
    }

    pub fn trace(&self) -> f64 {
        match &self.repr {
            Representation::PositionDiagonal(d) | Representation::MomentumDiagonal(d) => {
                d.iter().sum()
            }
            Representation::Dense(m) => m.diagonal().iter().map(|z| z.re).sum(),
        }
    }

    /// Operator norm of `self - other`.
    pub fn distance(&self, other: &HermitianOperator) -> Result<f64> {
        self.grid.check_same(&other.grid)?;
        match (&self.repr, &other.repr) {
            (Representation::PositionDiagonal(a), Representation::PositionDiagonal(b))
            | (Representation::MomentumDiagonal(a), Representation::MomentumDiagonal(b)) => Ok(a
                .iter()
                .zip(b)
                .map(|(x, y)| (x - y).abs())
                .fold(0.0, f64::max)),
            _ => operator_norm(&(self.to_matrix() - other.to_matrix())),
        }
    }

    /// Operator norm of `A² - A`; zero exactly for projections.
    pub fn idempotency_defect(&self) -> f64 {
        match &self.repr {
            Representation::PositionDiagonal(d) | Representation::MomentumDiagonal(d) => {
                d.iter().map(|v| (v * v - v).abs()).fold(0.0, f64::max)
            }
            Representation::Dense(m) => {
                let sq = m * m - m;
                operator_norm(&hermitian_part(&sq)).unwrap_or(f64::INFINITY)
            }
        }
    }
}

/// A Hermitian operator with spectrum in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Effect(HermitianOperator);

impl Effect {
    pub fn new(op: HermitianOperator) -> Result<Self> {
        let ev = op.eigenvalues();
        let (min, max) = (ev[0], ev[ev.len() - 1]);
        if min < -POSITIVITY_TOL || max > 1.0 + POSITIVITY_TOL {
            return Err(Error::NotAnEffect { min, max });
        }
        Ok(Self(op))
    }

    /// Wraps an operator known to be an effect by construction.
    pub(crate) fn trusted(op: HermitianOperator) -> Self {
        Self(op)
    }

    pub fn from_matrix(grid: GridSpec, matrix: CMatrix) -> Result<Self> {
        Self::new(HermitianOperator::from_matrix(grid, matrix)?)
    }

    pub fn identity(grid: GridSpec) -> Self {
        Self(HermitianOperator::identity(grid))
    }

    pub fn zero(grid: GridSpec) -> Self {
        Self(HermitianOperator::zero(grid))
    }

    pub fn operator(&self) -> &HermitianOperator {
        &self.0
    }

    pub fn into_operator(self) -> HermitianOperator {
        self.0
    }
}

impl std::ops::Deref for Effect {
    type Target = HermitianOperator;

    fn deref(&self) -> &HermitianOperator {
        &self.0
    }
}

/// Weyl displacement `W(j, k) = τ^{jk} U(j) V(k)` with `τ = exp(iπ/n)`.
///
/// `U(j)` shifts by `j` cells (`q = j dx`) and `V(k)` multiplies by `exp(i k dp x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Displacement {
    grid_n: usize,
    center: i64,
    shift: i64,
    boost: i64,
}

pub fn translation(grid: GridSpec, j: i64) -> Displacement {
    weyl(grid, j, 0)
}

pub fn modulation(grid: GridSpec, k: i64) -> Displacement {
    weyl(grid, 0, k)
}

pub fn weyl(grid: GridSpec, j: i64, k: i64) -> Displacement {
    Displacement {
        grid_n: grid.n(),
        center: grid.center() as i64,
        shift: j,
        boost: k,
    }
}

impl Displacement {
    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn boost(&self) -> i64 {
        self.boost
    }

    /// `τ^{jk} = exp(i q_j p_k / 2)`.
    pub fn phase(&self) -> Complex64 {
        root_of_unity(self.shift * self.boost, 2 * self.grid_n as i64)
    }

    /// `exp(i k dp x_m)`.
    fn boost_phase(&self, m: usize) -> Complex64 {
        root_of_unity(self.boost * (m as i64 - self.center), self.grid_n as i64)
    }

    fn src(&self, m: usize) -> usize {
        (m as i64 - self.shift).rem_euclid(self.grid_n as i64) as usize
    }

    pub fn apply_to(&self, amps: &[Complex64]) -> Vec<Complex64> {
        let tau = self.phase();
        (0..self.grid_n)
            .map(|m| {
                let s = self.src(m);
                tau * self.boost_phase(s) * amps[s]
            })
            .collect()
    }

    pub fn apply(&self, psi: &StateVector) -> StateVector {
        StateVector::new(psi.grid(), self.apply_to(psi.amplitudes()))
            .expect("displacement preserves length")
    }

    /// `W† ψ`.
    pub fn apply_adjoint(&self, psi: &StateVector) -> StateVector {
        let tau = self.phase().conj();
        let n = self.grid_n as i64;
        let amps = psi.amplitudes();
        let out = (0..self.grid_n)
            .map(|m| {
                let s = (m as i64 + self.shift).rem_euclid(n) as usize;
                tau * self.boost_phase(m).conj() * amps[s]
            })
            .collect();
        StateVector::new(psi.grid(), out).expect("displacement preserves length")
    }

    pub fn to_matrix(&self) -> CMatrix {
        let n = self.grid_n;
        let tau = self.phase();
        let mut m = CMatrix::zeros(n, n);
        for row in 0..n {
            let s = self.src(row);
            m[(row, s)] = tau * self.boost_phase(s);
        }
        m
    }

    /// `W A W†` on the stored representation.
    ///
    /// Position diagonals are only translated by `U(j)` and momentum diagonals by `V(k)`,
    /// so diagonal effects are transported exactly, without phase round-off.
    pub fn conjugate_operator(&self, op: &HermitianOperator) -> HermitianOperator {
        let n = self.grid_n as i64;
        let roll = |d: &[f64], s: i64| -> Vec<f64> {
            (0..self.grid_n)
                .map(|m| d[(m as i64 - s).rem_euclid(n) as usize])
                .collect()
        };
        let repr = match &op.repr {
            Representation::PositionDiagonal(d) => {
                Representation::PositionDiagonal(roll(d, self.shift))
            }
            Representation::MomentumDiagonal(d) => {
                Representation::MomentumDiagonal(roll(d, self.boost))
            }
            Representation::Dense(m) => Representation::Dense(self.conjugate(m)),
        };
        HermitianOperator {
            grid: op.grid,
            repr,
        }
    }

    /// `W A W†`.
    pub fn conjugate(&self, a: &CMatrix) -> CMatrix {
        let n = self.grid_n;
        let ph: Vec<Complex64> = (0..n).map(|m| self.boost_phase(m)).collect();
        CMatrix::from_fn(n, n, |r, c| {
            let (sr, sc) = (self.src(r), self.src(c));
            a[(sr, sc)] * ph[sr] * ph[sc].conj()
        })
    }

    /// `W† A W`.
    pub fn conjugate_adjoint(&self, a: &CMatrix) -> CMatrix {
        let n = self.grid_n as i64;
        let ph: Vec<Complex64> = (0..self.grid_n).map(|m| self.boost_phase(m)).collect();
        CMatrix::from_fn(self.grid_n, self.grid_n, |r, c| {
            let sr = (r as i64 + self.shift).rem_euclid(n) as usize;
            let sc = (c as i64 + self.shift).rem_euclid(n) as usize;
            a[(sr, sc)] * ph[r].conj() * ph[c]
        })
    }
}

/// Density operator in spectral form `T = Σ λ_i |φ_i⟩⟨φ_i|`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    grid: GridSpec,
    weights: Vec<f64>,
    vectors: Vec<StateVector>,
}

/// Eigenvalues below this are dropped from the spectral decomposition.
const SPECTRAL_CUTOFF: f64 = 1e-14;

impl DensityOperator {
    /// Validates weights (nonnegative, summing to one within 1e-12) and orthonormality
    /// of the vectors (within 1e-10).
    pub fn new(weights: Vec<f64>, vectors: Vec<StateVector>) -> Result<Self> {
        if weights.is_empty() || weights.len() != vectors.len() {
            return Err(Error::InvalidDensity(format!(
                "{} weights for {} vectors",
                weights.len(),
                vectors.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
            return Err(Error::InvalidDensity(format!("negative weight {w}")));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidDensity(format!("weights sum to {total}")));
        }
        let grid = vectors[0].grid();
        for (i, u) in vectors.iter().enumerate() {
            grid.check_same(&u.grid())?;
            for (j, v) in vectors.iter().enumerate().skip(i) {
                let target = if i == j { 1.0 } else { 0.0 };
                let ip = u.inner(v)?;
                if (ip - Complex64::new(target, 0.0)).norm() > 1e-10 {
                    return Err(Error::InvalidDensity(format!(
                        "vectors {i} and {j} have inner product {ip}"
                    )));
                }
            }
        }
        Ok(Self {
            grid,
            weights,
            vectors,
        })
    }

    pub fn pure(psi: StateVector) -> Result<Self> {
        Self::new(vec![1.0], vec![psi])
    }

    /// `I / n`.
    pub fn maximally_mixed(grid: GridSpec) -> Self {
        let n = grid.n();
        Self {
            grid,
            weights: vec![1.0 / n as f64; n],
            vectors: (0..n).map(|m| StateVector::basis(grid, m)).collect(),
        }
    }

    /// Spectral decomposition of a positive, trace-one Hermitian matrix.
    pub fn from_matrix(grid: GridSpec, matrix: &CMatrix) -> Result<Self> {
        let n = grid.n();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::InvalidDensity(format!(
                "expected {n}x{n} matrix, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let deviation = hermitian_deviation(matrix);
        if deviation > 1e-10 {
            return Err(Error::NotHermitian { deviation });
        }
        let trace: f64 = matrix.diagonal().iter().map(|z| z.re).sum();
        if (trace - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidDensity(format!("trace is {trace}")));
        }
        let eig = hermitian_part(matrix).symmetric_eigen();
        let mut pairs: Vec<(f64, StateVector)> = Vec::new();
        for (i, &lambda) in eig.eigenvalues.iter().enumerate() {
            if lambda < -POSITIVITY_TOL {
                return Err(Error::InvalidDensity(format!(
                    "negative eigenvalue {lambda}"
                )));
            }
            if lambda > SPECTRAL_CUTOFF {
                let v = eig.eigenvectors.column(i).iter().copied().collect();
                pairs.push((lambda, StateVector::new(grid, v)?.normalized()?));
            }
        }
        pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
        let total: f64 = pairs.iter().map(|p| p.0).sum();
        let (weights, vectors) = pairs.into_iter().map(|(w, v)| (w / total, v)).unzip();
        Self::new(weights, vectors)
    }

    /// `Σ w_i |ψ_i⟩⟨ψ_i|` for unit, not necessarily orthogonal, vectors.
    pub fn mixture(grid: GridSpec, components: &[(f64, StateVector)]) -> Result<Self> {
        let total: f64 = components.iter().map(|c| c.0).sum();
        if components.is_empty() || !(total > 0.0) {
            return Err(Error::InvalidDensity("empty mixture".into()));
        }
        let n = grid.n();
        let mut m = CMatrix::zeros(n, n);
        for (w, psi) in components {
            grid.check_same(&psi.grid())?;
            if *w < 0.0 {
                return Err(Error::InvalidDensity(format!("negative weight {w}")));
            }
            let v = nalgebra::DVector::from_column_slice(psi.clone().normalized()?.amplitudes());
            m += (&v * v.adjoint()) * Complex64::new(w / total, 0.0);
        }
        Self::from_matrix(grid, &m)
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn vectors(&self) -> &[StateVector] {
        &self.vectors
    }

    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    pub fn purity(&self) -> f64 {
        self.weights.iter().map(|w| w * w).sum()
    }

    pub fn to_matrix(&self) -> CMatrix {
        let n = self.grid.n();
        let mut m = CMatrix::zeros(n, n);
        for (w, psi) in self.weights.iter().zip(&self.vectors) {
            let a = psi.amplitudes();
            for r in 0..n {
                if a[r] == ZERO {
                    continue;
                }
                let ar = a[r] * *w;
                for c in 0..n {
                    m[(r, c)] += ar * a[c].conj();
                }
            }
        }
        m
    }

    /// Position distribution `Σ λ_i |φ_i(x_m)|² dx`, as mass per cell.
    pub fn position_probabilities(&self) -> Vec<f64> {
        self.mix(|psi| psi.probabilities())
    }

    /// Momentum distribution `Σ λ_i |φ̂_i(p_k)|² dp`, as mass per cell.
    pub fn momentum_probabilities(&self) -> Vec<f64> {
        self.mix(|psi| fourier_transform(psi).probabilities())
    }

    fn mix(&self, f: impl Fn(&StateVector) -> Vec<f64>) -> Vec<f64> {
        let mut out = vec![0.0; self.grid.n()];
        for (w, psi) in self.weights.iter().zip(&self.vectors) {
            for (o, p) in out.iter_mut().zip(f(psi)) {
                *o += w * p;
            }
        }
        out
    }

    /// `tr[T A]`.
    pub fn expectation(&self, a: &CMatrix) -> f64 {
        self.weights
            .iter()
            .zip(&self.vectors)
            .map(|(w, psi)| {
                let v = nalgebra::DVector::from_column_slice(psi.amplitudes());
                w * (v.adjoint() * a * &v)[(0, 0)].re
            })
            .sum()
    }
}

/// `W(j,k) T W(j,k)†`, acting on the eigenvectors.
pub fn conjugate_density(t: &DensityOperator, j: i64, k: i64) -> DensityOperator {
    let w = weyl(t.grid, j, k);
    DensityOperator {
        grid: t.grid,
        weights: t.weights.clone(),
        vectors: t.vectors.iter().map(|v| w.apply(v)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::make_grid;

    fn ramp(grid: GridSpec) -> StateVector {
        StateVector::new(
            grid,
            (0..grid.n())
                .map(|j| Complex64::new(1.0 + j as f64, (j as f64).sin()))
                .collect(),
        )
        .unwrap()
        .normalized()
        .unwrap()
    }

    #[test]
    fn translation_is_cyclic_shift() {
        let g = make_grid(8, 0.5).unwrap();
        let psi = ramp(g);
        let out = translation(g, 3).apply(&psi);
        for m in 0..8 {
            assert_eq!(out.amplitudes()[m], psi.amplitudes()[(m + 8 - 3) % 8]);
        }
        assert_eq!(translation(g, 8).apply(&psi), psi);
        assert_eq!(translation(g, 0).apply(&psi), psi);
    }

    #[test]
    fn modulation_keeps_modulus() {
        let g = make_grid(8, 0.5).unwrap();
        let psi = ramp(g);
        let out = modulation(g, 3).apply(&psi);
        for m in 0..8 {
            assert!((out.amplitudes()[m].norm() - psi.amplitudes()[m].norm()).abs() < 1e-15);
        }
        assert_eq!(modulation(g, 0).apply(&psi), psi);
    }

    #[test]
    fn matrix_forms_agree() {
        let g = make_grid(8, 0.7).unwrap();
        let psi = ramp(g);
        let w = weyl(g, 3, -5);
        let v = nalgebra::DVector::from_column_slice(psi.amplitudes());
        let via_matrix = w.to_matrix() * v;
        let direct = w.apply(&psi);
        for m in 0..8 {
            assert!((via_matrix[m] - direct.amplitudes()[m]).norm() < 1e-14);
        }
        let back = w.apply_adjoint(&direct);
        for m in 0..8 {
            assert!((back.amplitudes()[m] - psi.amplitudes()[m]).norm() < 1e-14);
        }
    }

    #[test]
    fn conjugation_matches_matrix_products() {
        let g = make_grid(6, 1.1).unwrap();
        let a = CMatrix::from_fn(6, 6, |r, c| {
            Complex64::new((r * 7 + c) as f64, (r as f64) - (c as f64))
        });
        let w = weyl(g, 2, 5);
        let wm = w.to_matrix();
        let expect = &wm * &a * wm.adjoint();
        assert!(max_abs(&(w.conjugate(&a) - expect)) < 1e-12);
        let expect_adj = wm.adjoint() * &a * &wm;
        assert!(max_abs(&(w.conjugate_adjoint(&a) - expect_adj)) < 1e-12);
    }

    #[test]
    fn operator_norm_basics() {
        let g = make_grid(4, 1.0).unwrap();
        let id = HermitianOperator::identity(g);
        assert_eq!(operator_norm(&id.to_matrix()).unwrap(), 1.0);
        let mut m = CMatrix::zeros(4, 4);
        m[(0, 0)] = Complex64::new(0.3, 0.0);
        m[(1, 1)] = Complex64::new(-0.7, 0.0);
        assert!((operator_norm(&m).unwrap() - 0.7).abs() < 1e-15);
        m[(0, 1)] = Complex64::new(0.0, 1.0);
        assert!(matches!(operator_norm(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn effect_validation() {
        let g = make_grid(4, 1.0).unwrap();
        assert!(Effect::new(
            HermitianOperator::diagonal(g, Axis::Position, vec![0.0, 0.5, 1.0, 1.0]).unwrap()
        )
        .is_ok());
        assert!(matches!(
            Effect::new(
                HermitianOperator::diagonal(g, Axis::Position, vec![0.0, 1.5, 1.0, 1.0]).unwrap()
            ),
            Err(Error::NotAnEffect { .. })
        ));
        assert!(Effect::new(
            HermitianOperator::diagonal(g, Axis::Momentum, vec![-0.1, 0.5, 1.0, 1.0]).unwrap()
        )
        .is_err());
    }

    #[test]
    fn momentum_diagonal_materializes_as_fourier_conjugate() {
        let g = make_grid(8, 0.4).unwrap();
        let d = vec![0.0, 0.1, 0.2, 1.0, 1.0, 0.3, 0.0, 0.5];
        let op = HermitianOperator::diagonal(g, Axis::Momentum, d.clone()).unwrap();
        let m = op.to_matrix();
        assert!(hermitian_deviation(&m) < 1e-14);
        let mut ev = hermitian_eigenvalues(&m);
        let mut sorted = d.clone();
        sorted.sort_by(|a, b| a.total_cmp(b));
        ev.iter_mut()
            .zip(&sorted)
            .for_each(|(e, s)| assert!((*e - s).abs() < 1e-12));
    }

    #[test]
    fn density_validation() {
        let g = make_grid(4, 1.0).unwrap();
        let e0 = StateVector::basis(g, 0);
        let e1 = StateVector::basis(g, 1);
        assert!(DensityOperator::new(vec![0.5, 0.5], vec![e0.clone(), e1.clone()]).is_ok());
        assert!(DensityOperator::new(vec![0.5, 0.6], vec![e0.clone(), e1.clone()]).is_err());
        assert!(DensityOperator::new(vec![0.5, 0.5], vec![e0.clone(), e0.clone()]).is_err());
        assert!(DensityOperator::new(vec![1.5, -0.5], vec![e0, e1]).is_err());
    }

    #[test]
    fn from_matrix_round_trip() {
        let g = make_grid(8, 0.4).unwrap();
        let a = ramp(g);
        let b = weyl(g, 2, 1).apply(&a);
        let t = DensityOperator::mixture(g, &[(0.3, a), (0.7, b)]).unwrap();
        assert_eq!(t.rank(), 2);
        let back = DensityOperator::from_matrix(g, &t.to_matrix()).unwrap();
        assert!(max_abs(&(back.to_matrix() - t.to_matrix())) < 1e-12);
        assert!(t.purity() < 1.0);
    }

    #[test]
    fn conjugate_density_identity_and_purity() {
        let g = make_grid(8, 0.4).unwrap();
        let t = DensityOperator::pure(ramp(g)).unwrap();
        assert_eq!(conjugate_density(&t, 0, 0), t);
        let moved = conjugate_density(&t, 3, -2);
        let m = moved.to_matrix();
        let purity = (&m * &m).trace().re;
        assert!((purity - 1.0).abs() < 1e-12);
    }
}
