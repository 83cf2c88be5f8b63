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

//! Quantitative statements about position/momentum pairs, evaluated on the lattice.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::{
    fourier_transform, gaussian_state, lattice_gaussian, Axis, GaussianParams, GridSpec,
    TAIL_MASS_LIMIT,
};
use crate::measures::{convolve, variance, GridSet, LineMeasure, MomentEstimate};
use crate::operators::{weyl, CMatrix, DensityOperator, Effect};
use crate::phasespace::{effect_of_region, margin_measures, JointObservable, PhaseRegion};
use crate::povm::{distinguish_measures, position_effect, sharp_position};

/// Variances of the position and momentum statistics of `S` under `E_ρ`, `F_ν`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UncertaintyReport {
    pub var_q_total: f64,
    pub var_p_total: f64,
    pub product: f64,
    /// Position variance of `S` itself.
    pub state_var_q: f64,
    pub state_var_p: f64,
    pub rho_var: f64,
    pub nu_var: f64,
}

/// `Var(p^{E_ρ}_S) · Var(p^{F_ν}_S)` with `(ρ, ν)` the margins of `G_T`.
///
/// `p^{E_ρ}_S` is the position distribution of `S` convolved with `ρ`, and likewise in
/// momentum. Every distribution involved must keep its boundary band empty.
pub fn uncertainty_product(t: &DensityOperator, s: &DensityOperator) -> Result<UncertaintyReport> {
    t.grid().check_same(&s.grid())?;
    let grid = t.grid();
    let (rho, nu) = margin_measures(t)?;
    let mu_q = LineMeasure::from_cell_masses(grid, Axis::Position, &s.position_probabilities())?;
    let mu_p = LineMeasure::from_cell_masses(grid, Axis::Momentum, &s.momentum_probabilities())?;
    let total_q = convolve(&mu_q, &rho)?;
    let total_p = convolve(&mu_p, &nu)?;
    let var_q_total = variance(&total_q).reliable()?;
    let var_p_total = variance(&total_p).reliable()?;
    Ok(UncertaintyReport {
        var_q_total,
        var_p_total,
        product: var_q_total * var_p_total,
        state_var_q: variance(&mu_q).reliable()?,
        state_var_p: variance(&mu_p).reliable()?,
        rho_var: variance(&rho).reliable()?,
        nu_var: variance(&nu).reliable()?,
    })
}

/// Symmetric weights on integer offsets whose variance equals `target` (in cells²).
///
/// Discrete Gaussian `exp(-s² / 2σ²)`, with `σ` bisected so that the lattice variance
/// matches exactly rather than only approximately.
pub(crate) fn discrete_gaussian(target: f64) -> Vec<(i64, f64)> {
    if target <= 0.0 {
        return vec![(0, 1.0)];
    }
    let weights = |sigma: f64| -> Vec<(i64, f64)> {
        let half = (10.0 * sigma).ceil() as i64 + 1;
        let raw: Vec<(i64, f64)> = (-half..=half)
            .map(|s| (s, (-(s * s) as f64 / (2.0 * sigma * sigma)).exp()))
            .filter(|(_, w)| *w > 1e-20)
            .collect();
        let total: f64 = raw.iter().map(|p| p.1).sum();
        raw.into_iter().map(|(s, w)| (s, w / total)).collect()
    };
    let var_of = |w: &[(i64, f64)]| w.iter().map(|(s, p)| (s * s) as f64 * p).sum::<f64>();
    let (mut lo, mut hi) = (1e-3_f64, target.sqrt().max(1.0) * 4.0);
    for _ in 0..200 {
        let mid = (lo * hi).sqrt();
        if var_of(&weights(mid)) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    weights((lo * hi).sqrt())
}

/// A state whose margins have variances `(var_q, var_p)`.
///
/// At `var_q var_p = 1/4` this is the squeezed Gaussian with `a = 1/(4 var_q)`. Above the
/// bound it is the minimum-uncertainty core with the same aspect ratio, averaged over
/// lattice displacements with discrete Gaussian weights carrying the excess variance.
pub fn gaussian_joint_state(var_q: f64, var_p: f64, grid: GridSpec) -> Result<DensityOperator> {
    for (name, v) in [("var_q", var_q), ("var_p", var_p)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::InvalidParameter {
                name,
                reason: format!("variance must be positive, got {v}"),
            });
        }
    }
    let product = var_q * var_p;
    if product < 0.25 - 1e-9 {
        return Err(Error::NotJointlyMeasurable {
            product,
            deficit: 0.25 - product,
        });
    }
    if (product - 0.25).abs() <= 1e-6 {
        return DensityOperator::pure(gaussian_state(grid, 0.25 / var_q, 0.0, 0.0, 0.0)?);
    }

    let core_q = 0.5 * (var_q / var_p).sqrt();
    let core_p = 0.25 / core_q;
    let core = gaussian_state(grid, 0.25 / core_q, 0.0, 0.0, 0.0)?;
    let shifts = discrete_gaussian((var_q - core_q).max(0.0) / (grid.dx() * grid.dx()));
    let boosts = discrete_gaussian((var_p - core_p).max(0.0) / (grid.dp() * grid.dp()));
    if shifts.len() > grid.n() || boosts.len() > grid.n() {
        return Err(Error::TailUnsafe { boundary_mass: 1.0 });
    }

    let n = grid.n();
    let mut m = CMatrix::zeros(n, n);
    for &(s, ws) in &shifts {
        for &(k, wk) in &boosts {
            let w = ws * wk;
            if w < 1e-18 {
                continue;
            }
            let v = DVector::from_vec(weyl(grid, s, k).apply(&core).into_amplitudes());
            m += (&v * v.adjoint()) * Complex64::new(w, 0.0);
        }
    }
    let trace: f64 = m.diagonal().iter().map(|z| z.re).sum();
    m /= Complex64::new(trace, 0.0);
    let t = DensityOperator::from_matrix(grid, &m)?;
    let (rho, nu) = margin_measures(&t)?;
    variance(&rho).reliable()?;
    variance(&nu).reliable()?;
    Ok(t)
}

/// Outcome of comparing `G_T` for `φ_{a,b}` and `φ_{a,-b}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliReport {
    pub position_margin_distance: f64,
    pub momentum_margin_distance: f64,
    /// Larger of the two margin distances.
    pub margin_distance: f64,
    /// `max_cell ‖G_{T1}(cell) - G_{T2}(cell)‖`.
    pub observable_distance: f64,
    pub rho_variance: MomentEstimate,
    pub nu_variance: MomentEstimate,
    /// Whether the continuum state fits on the grid (tail mass below 1e-12).
    pub tail_safe: bool,
}

/// Two distinct states with identical margins.
///
/// Cell effects of `G_T` are unitary conjugates of `T / n`, so every cell has the same
/// difference norm `‖T1 - T2‖ / n`; for pure states that is `sqrt(1 - |⟨φ1, φ2⟩|²) / n`.
pub fn pauli_pair_demo(a: f64, b: f64, grid: GridSpec) -> Result<PauliReport> {
    if b == 0.0 || !b.is_finite() {
        return Err(Error::InvalidParameter {
            name: "b",
            reason: "chirp must be nonzero, otherwise both states coincide".into(),
        });
    }
    let p1 = GaussianParams::chirped(a, b);
    let phi1 = lattice_gaussian(grid, p1)?;
    let phi2 = lattice_gaussian(grid, GaussianParams::chirped(a, -b))?;
    let overlap = phi1.inner(&phi2)?.norm_sqr().min(1.0);
    let t1 = DensityOperator::pure(phi1)?;
    let t2 = DensityOperator::pure(phi2)?;
    let (rho1, nu1) = margin_measures(&t1)?;
    let (rho2, nu2) = margin_measures(&t2)?;
    let dq = distinguish_measures(&rho1, &rho2)?;
    let dp = distinguish_measures(&nu1, &nu2)?;
    Ok(PauliReport {
        position_margin_distance: dq,
        momentum_margin_distance: dp,
        margin_distance: dq.max(dp),
        observable_distance: (1.0 - overlap).sqrt() / grid.n() as f64,
        rho_variance: variance(&rho1),
        nu_variance: variance(&nu1),
        tail_safe: p1.tail_mass(&grid) < TAIL_MASS_LIMIT,
    })
}

/// `max_j | |φ_{a,b}(x_j)| - |φ̂_{a,b}(p_j)| |` on a grid with `dx = dp`.
pub fn self_fourier_gap(a: f64, b: f64, grid: GridSpec) -> Result<f64> {
    if (grid.dx() - grid.dp()).abs() > 1e-12 * grid.dx() {
        return Err(Error::InvalidGrid(format!(
            "position and momentum points must coincide (dx = {}, dp = {})",
            grid.dx(),
            grid.dp()
        )));
    }
    let psi = gaussian_state(grid, a, b, 0.0, 0.0)?;
    let phi = fourier_transform(&psi);
    let q = psi.wave_function(Axis::Position);
    let p = phi.wave_function(Axis::Momentum);
    Ok(q.iter()
        .zip(&p)
        .map(|(u, v)| (u.norm() - v.norm()).abs())
        .fold(0.0, f64::max))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalizationReport {
    /// `‖G(Z)‖`, also the best constant `k_Z` with `p^G_T(Z) ≤ k_Z` for all states.
    pub norm: f64,
    pub proper_subregion: bool,
    /// Whether both margins of the generating state charge every cell; `None` for tables.
    pub full_support_margins: Option<bool>,
    /// `Some(norm < 1 - 1e-9)` when `Z` is proper and the margins have full support.
    pub strictly_below_one: Option<bool>,
}

pub fn localization_bound(g: &JointObservable, region: &PhaseRegion) -> Result<LocalizationReport> {
    let norm = effect_of_region(g, region)?.norm();
    let proper = region.len() < g.grid().n() * g.grid().n();
    let full_support = match g.state() {
        Some(t) => {
            let (rho, nu) = margin_measures(t)?;
            Some(
                rho.cell_masses().iter().all(|m| *m > 0.0)
                    && nu.cell_masses().iter().all(|m| *m > 0.0),
            )
        }
        None => None,
    };
    let strictly_below_one = match full_support {
        Some(true) if proper => Some(norm < 1.0 - 1e-9),
        _ => None,
    };
    Ok(LocalizationReport {
        norm,
        proper_subregion: proper,
        full_support_margins: full_support,
        strictly_below_one,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiracMixtureReport {
    pub set: GridSet,
    pub effect: Effect,
    /// `‖E² - E‖`.
    pub idempotency_defect: f64,
    /// `‖E - Π_Q(X - a)‖`.
    pub match_defect: f64,
}

fn lattice_index(grid: GridSpec, x: f64, name: &'static str) -> Result<i64> {
    let steps = x / grid.dx();
    let r = steps.round();
    if (steps - r).abs() > 1e-9 {
        return Err(Error::InvalidParameter {
            name,
            reason: format!("{x} is not a lattice point of spacing {}", grid.dx()),
        });
    }
    Ok(r as i64)
}

/// `X = ∪_k [k(b-a), (k+1/2)(b-a))`, rasterized on the torus.
pub fn half_period_set(grid: GridSpec, period_cells: usize) -> GridSet {
    let p = period_cells as i64;
    GridSet::from_mask(
        (0..grid.n())
            .map(|j| grid.offset(j).rem_euclid(p) < p / 2)
            .collect(),
    )
}

/// Mixture `ρ = t δ_a + (1-t) δ_b` of two sharp positions and the half-period set on
/// which `E_ρ(X)` is the projection `Π_Q(X - a)`.
pub fn dirac_mixture_projection(
    a: f64,
    b: f64,
    t: f64,
    grid: GridSpec,
) -> Result<DiracMixtureReport> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::InvalidParameter {
            name: "t",
            reason: format!("mixing weight must lie in (0, 1), got {t}"),
        });
    }
    if !(a < b) {
        return Err(Error::InvalidParameter {
            name: "b",
            reason: format!("need a < b, got a = {a}, b = {b}"),
        });
    }
    let ia = lattice_index(grid, a, "a")?;
    let ib = lattice_index(grid, b, "b")?;
    let period = (ib - ia) as usize;
    if period < 2 || period % 2 != 0 || grid.n() % period != 0 {
        return Err(Error::InvalidParameter {
            name: "b",
            reason: format!(
                "b - a must be an even number of cells dividing n = {}, got {period}",
                grid.n()
            ),
        });
    }
    let ca = grid.nearest_cell(Axis::Position, a)?;
    let cb = grid.nearest_cell(Axis::Position, b)?;
    let rho = LineMeasure::from_atoms(grid, Axis::Position, vec![(ca, t), (cb, 1.0 - t)])?;
    let set = half_period_set(grid, period);
    let effect = position_effect(&rho, &set)?;
    let sharp = sharp_position(grid, &set.shifted(-ia))?;
    Ok(DiracMixtureReport {
        idempotency_defect: effect.idempotency_defect(),
        match_defect: effect.distance(&sharp)?,
        set,
        effect,
    })
}
