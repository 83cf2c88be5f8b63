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

#![allow(dead_code)]

use covphase::{CMatrix, GridSpec, StateVector};
use nalgebra::DVector;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Direct O(n²) evaluation of `n^{-1/2} Σ_j ψ_j exp(-i p_k x_j)` with floating-point
/// angles, independent of the FFT path.
pub fn dense_dft(psi: &StateVector) -> Vec<Complex64> {
    let g = psi.grid();
    let n = g.n();
    (0..n)
        .map(|k| {
            psi.amplitudes()
                .iter()
                .enumerate()
                .map(|(j, z)| z * Complex64::from_polar(1.0, -g.momentum(k) * g.position(j)))
                .sum::<Complex64>()
                / (n as f64).sqrt()
        })
        .collect()
}

pub fn dft_matrix(g: GridSpec) -> CMatrix {
    let n = g.n();
    CMatrix::from_fn(n, n, |k, j| {
        Complex64::from_polar(1.0 / (n as f64).sqrt(), -g.momentum(k) * g.position(j))
    })
}

pub fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest singular value; an operator-norm route independent of the Hermitian solver.
pub fn spectral_norm(m: &CMatrix) -> f64 {
    m.clone()
        .singular_values()
        .iter()
        .copied()
        .fold(0.0, f64::max)
}

pub fn column(psi: &StateVector) -> DVector<Complex64> {
    DVector::from_column_slice(psi.amplitudes())
}

/// Composite Simpson rule on `[lo, hi]` with `steps` (even) subintervals.
pub fn simpson(f: impl Fn(f64) -> f64, lo: f64, hi: f64, steps: usize) -> f64 {
    let h = (hi - lo) / steps as f64;
    let mut acc = f(lo) + f(hi);
    for i in 1..steps {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(lo + i as f64 * h);
    }
    acc * h / 3.0
}
