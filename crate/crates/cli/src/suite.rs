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

//! The verification suite behind `covphase verify`.
//!
//! Checks are organized in groups; each group seeds its own generator from the suite
//! seed so results do not depend on which groups run or in what order.

use std::collections::BTreeMap;

use covphase::operators::max_abs;
use covphase::phasespace::{covariance_defect, sample_table};
use covphase::povm::{sharp_momentum, sharp_position};
use covphase::{
    analytic_gaussian_transform, commutator_norm, covariant_average, covariant_observable,
    dirac_mixture_projection, effect_of_region, fourier_transform, gaussian_joint_state,
    gaussian_state, lattice_gaussian, localization_bound, make_grid, margin_measures, modulation,
    momentum_effect, operator_norm, outcome_distribution, pauli_pair_demo, position_effect, random,
    self_fourier_gap, translation, uncertainty_product, variance, weyl, Axis, CMatrix,
    DensityOperator, Error, GaussianParams, GridSet, GridSpec, HermitianOperator, JointObservable,
    LineMeasure, PhaseRegion,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::config::JointStateSpec;
use crate::report::{Bound, Check, Report};

type Result<T> = covphase::Result<T>;

struct Spec {
    name: &'static str,
    anchor: &'static str,
    tolerance: f64,
    bound: Bound,
}

const fn upper(name: &'static str, anchor: &'static str, tolerance: f64) -> Spec {
    Spec {
        name,
        anchor,
        tolerance,
        bound: Bound::Upper,
    }
}

const fn lower(name: &'static str, anchor: &'static str, tolerance: f64) -> Spec {
    Spec {
        name,
        anchor,
        tolerance,
        bound: Bound::Lower,
    }
}

const SPECS: &[Spec] = &[
    upper(
        "covariance.position_exact",
        "U(q) E(X) U(q)* = E(X+q), V(p) E(X) V(p)* = E(X)",
        0.0,
    ),
    upper(
        "covariance.momentum_exact",
        "V(p) F(Y) V(p)* = F(Y+p), U(q) F(Y) U(q)* = F(Y)",
        0.0,
    ),
    upper(
        "covariance.dense",
        "covariance of E_rho and F_nu, dense conjugation",
        1e-10,
    ),
    upper(
        "covariance.phase_space",
        "W(q,p) G(Z) W(q,p)* = G(Z+(q,p))",
        1e-10,
    ),
    upper(
        "resolution_of_identity",
        "sum of W T W* / n over phase space = I",
        1e-10,
    ),
    upper("margin_theorem.position", "G_T(X x R) = E_rho(X)", 1e-10),
    upper("margin_theorem.momentum", "G_T(R x Y) = F_nu(Y)", 1e-10),
    upper(
        "gaussian_transform",
        "Fourier transform of the chirped Gaussian",
        1e-6,
    ),
    upper(
        "uncertainty.equality",
        "Var(rho) Var(nu) = 1/4 for the minimum-uncertainty state",
        0.02,
    ),
    lower("uncertainty.random", "Var(p^E_S) Var(p^F_S) >= 1", 0.98),
    upper(
        "pauli.margin_distance",
        "phi_{a,b} and phi_{a,-b} share both margins",
        1e-8,
    ),
    lower(
        "pauli.observable_distance",
        "phi_{a,b} and phi_{a,-b} generate distinct G_T",
        1e-6,
    ),
    upper(
        "self_fourier.minimum_uncertainty",
        "|phi| = |phi^| iff a^2 + b^2 = 1/4",
        1e-6,
    ),
    lower(
        "self_fourier.broad",
        "|phi| != |phi^| for a^2 + b^2 != 1/4",
        0.05,
    ),
    upper("localization.cell", "||G_T(cell)|| = 1/n", 1e-10),
    upper(
        "localization.half",
        "||G_T(Z)|| < 1 for proper Z",
        1.0 - 1e-6,
    ),
    upper("localization.full", "||G_T(full)|| = 1", 1e-10),
    upper(
        "dirac_mixture",
        "E_rho(X) = Pi_Q(X - a) for a two-point rho",
        1e-12,
    ),
    upper(
        "covariant_average.fixed_point",
        "G_T is fixed by the covariant average",
        1e-10,
    ),
    upper(
        "covariant_average.covariance",
        "the covariant average is covariant",
        1e-10,
    ),
    upper(
        "covariant_average.idempotence",
        "averaging twice equals averaging once",
        1e-10,
    ),
    upper(
        "covariant_average.margins",
        "averaging keeps covariant margins",
        1e-10,
    ),
    upper(
        "joint_state.round_trip",
        "margins of T reproduce (var_q, var_p)",
        0.01,
    ),
    upper(
        "joint_state.rejection",
        "no T exists when var_q var_p < 1/4",
        1e-12,
    ),
    upper("joint_state.request", "requested joint state", 0.01),
    lower("noncommutativity", "[E(X), F(Y)] != 0", 1e-3),
    upper("noncommutativity.self", "[A, A] = 0", 1e-12),
    lower(
        "noncommutativity.config",
        "[E(X), F(Y)] != 0 for the configured pair",
        1e-3,
    ),
    lower("sampling.chi_square", "uniform outcomes for T = I/n", 1e-3),
    upper("sampling.determinism", "identical draws per seed", 0.0),
];

pub const GROUPS: &[&str] = &[
    "covariance",
    "covariant_average",
    "dirac_mixture",
    "gaussian_transform",
    "joint_state",
    "localization",
    "margin_theorem",
    "noncommutativity",
    "pauli",
    "resolution_of_identity",
    "sampling",
    "self_fourier",
    "uncertainty",
];

/// Noncommutativity instance supplied by the user.
#[derive(Debug, Clone)]
pub struct EffectPair {
    pub position: HermitianOperator,
    pub momentum: HermitianOperator,
}

#[derive(Debug, Clone, Default)]
pub struct SuiteOptions {
    pub seed: u64,
    pub tolerances: BTreeMap<String, f64>,
    pub pauli: Option<(f64, f64)>,
    pub joint_state: Option<JointStateSpec>,
    pub effects: Option<EffectPair>,
}

struct Recorder<'a> {
    options: &'a SuiteOptions,
    checks: Vec<Check>,
}

impl Recorder<'_> {
    fn spec(name: &str) -> &'static Spec {
        SPECS
            .iter()
            .find(|s| s.name == name)
            .expect("check is registered")
    }

    fn tolerance(&self, spec: &Spec) -> f64 {
        self.options
            .tolerances
            .get(spec.name)
            .copied()
            .unwrap_or(spec.tolerance)
    }

    fn record(&mut self, name: &str, value: f64) -> &mut Check {
        let spec = Self::spec(name);
        let check = Check::evaluate(
            spec.name,
            spec.anchor,
            value,
            self.tolerance(spec),
            spec.bound,
        );
        self.checks.push(check);
        self.checks.last_mut().expect("just pushed")
    }

    fn error(&mut self, names: &[&str], e: &Error) {
        for name in names {
            if self.checks.iter().any(|c| c.name == *name) {
                continue;
            }
            let spec = Self::spec(name);
            let check = Check::errored(
                spec.name,
                spec.anchor,
                self.tolerance(spec),
                spec.bound,
                e.to_string(),
            );
            self.checks.push(check);
        }
    }
}

fn group_rng(seed: u64, group: &str) -> ChaCha8Rng {
    let salt = group.bytes().fold(0xcbf2_9ce4_8422_2325_u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    });
    ChaCha8Rng::seed_from_u64(seed ^ salt)
}

/// Runs one group; unknown names give an empty list.
pub fn run_group(group: &str, options: &SuiteOptions) -> Vec<Check> {
    let mut rec = Recorder {
        options,
        checks: Vec::new(),
    };
    let mut rng = group_rng(options.seed, group);
    let (names, outcome): (&[&str], Result<()>) = match group {
        "covariance" => (
            &[
                "covariance.position_exact",
                "covariance.momentum_exact",
                "covariance.dense",
                "covariance.phase_space",
            ],
            covariance(&mut rec, &mut rng),
        ),
        "resolution_of_identity" => (&["resolution_of_identity"], resolution(&mut rec, &mut rng)),
        "margin_theorem" => (
            &["margin_theorem.position", "margin_theorem.momentum"],
            margin_theorem(&mut rec, &mut rng),
        ),
        "gaussian_transform" => (&["gaussian_transform"], gaussian_transform(&mut rec)),
        "uncertainty" => (
            &["uncertainty.equality", "uncertainty.random"],
            uncertainty(&mut rec, &mut rng),
        ),
        "pauli" => (
            &["pauli.margin_distance", "pauli.observable_distance"],
            pauli(&mut rec),
        ),
        "self_fourier" => (
            &["self_fourier.minimum_uncertainty", "self_fourier.broad"],
            self_fourier(&mut rec),
        ),
        "localization" => (
            &[
                "localization.cell",
                "localization.half",
                "localization.full",
            ],
            localization(&mut rec),
        ),
        "dirac_mixture" => (&["dirac_mixture"], dirac_mixture(&mut rec)),
        "covariant_average" => (
            &[
                "covariant_average.fixed_point",
                "covariant_average.covariance",
                "covariant_average.idempotence",
                "covariant_average.margins",
            ],
            averaging(&mut rec, &mut rng),
        ),
        "joint_state" => (
            &["joint_state.round_trip", "joint_state.rejection"],
            joint_state(&mut rec),
        ),
        "noncommutativity" => (
            &["noncommutativity", "noncommutativity.self"],
            noncommutativity(&mut rec),
        ),
        "sampling" => (
            &["sampling.chi_square", "sampling.determinism"],
            sampling(&mut rec, &mut rng),
        ),
        _ => (&[], Ok(())),
    };
    if let Err(e) = outcome {
        rec.error(names, &e);
    }
    rec.checks
}

pub fn run_suite(options: &SuiteOptions) -> Report {
    Report::new(GROUPS.iter().flat_map(|g| run_group(g, options)).collect())
}

fn symmetric(n: usize) -> GridSpec {
    GridSpec::symmetric(n).expect("valid grid size")
}

fn norm(m: CMatrix) -> f64 {
    operator_norm(&m).unwrap_or(f64::INFINITY)
}

fn covariance(rec: &mut Recorder, rng: &mut ChaCha8Rng) -> Result<()> {
    let g = symmetric(16);
    let (mut pos_mismatch, mut mom_mismatch) = (0usize, 0usize);
    let mut dense: f64 = 0.0;
    for _ in 0..50 {
        let rho = random::measure(g, Axis::Position, rng);
        let nu = random::measure(g, Axis::Momentum, rng);
        let x = random::set(g, rng);
        let y = random::set(g, rng);
        let (j, k) = (rng.gen_range(-32..32), rng.gen_range(-32..32));
        let (u, v) = (translation(g, j), modulation(g, k));

        let e = position_effect(&rho, &x)?;
        let e_shift = position_effect(&rho, &x.shifted(j))?;
        pos_mismatch += usize::from(u.conjugate_operator(&e) != *e_shift.operator());
        pos_mismatch += usize::from(v.conjugate_operator(&e) != *e.operator());
        dense = dense
            .max(max_abs(
                &(u.conjugate(&e.to_matrix()) - e_shift.to_matrix()),
            ))
            .max(max_abs(&(v.conjugate(&e.to_matrix()) - e.to_matrix())));

        let f = momentum_effect(&nu, &y)?;
        let f_shift = momentum_effect(&nu, &y.shifted(k))?;
        mom_mismatch += usize::from(v.conjugate_operator(&f) != *f_shift.operator());
        mom_mismatch += usize::from(u.conjugate_operator(&f) != *f.operator());
        dense = dense
            .max(max_abs(
                &(v.conjugate(&f.to_matrix()) - f_shift.to_matrix()),
            ))
            .max(max_abs(&(u.conjugate(&f.to_matrix()) - f.to_matrix())));
    }
    rec.record("covariance.position_exact", pos_mismatch as f64);
    rec.record("covariance.momentum_exact", mom_mismatch as f64);
    rec.record("covariance.dense", dense);

    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let obs = covariant_observable(&random::density(g, rng));
        let cells: Vec<(usize, usize)> = (0..40)
            .map(|_| (rng.gen_range(0..16), rng.gen_range(0..16)))
            .collect();
        let z = PhaseRegion::from_cells(g, cells)?;
        let (a, b) = (rng.gen_range(-32..32), rng.gen_range(-32..32));
        let lhs = weyl(g, a, b).conjugate(&effect_of_region(&obs, &z)?.to_matrix());
        let rhs = effect_of_region(&obs, &z.shifted(a, b))?.to_matrix();
        worst = worst.max(norm(lhs - rhs));
    }
    rec.record("covariance.phase_space", worst);
    Ok(())
}

fn resolution(rec: &mut Recorder, rng: &mut ChaCha8Rng) -> Result<()> {
    let g = symmetric(16);
    let worst = (0..10)
        .map(|_| covariant_observable(&random::density(g, rng)).normalization_deviation())
        .fold(0.0, f64::max);
    rec.record("resolution_of_identity", worst);
    Ok(())
}

fn margin_theorem(rec: &mut Recorder, rng: &mut ChaCha8Rng) -> Result<()> {
    let g = symmetric(16);
    let full = GridSet::full(g);
    let (mut dq, mut dp): (f64, f64) = (0.0, 0.0);
    for _ in 0..10 {
        let t = random::density(g, rng);
        let obs = covariant_observable(&t);
        let (rho, nu) = margin_measures(&t)?;
        for _ in 0..20 {
            let x = random::set(g, rng);
            let joint = effect_of_region(&obs, &PhaseRegion::product(&x, &full)?)?;
            dq = dq.max(norm(
                joint.to_matrix() - position_effect(&rho, &x)?.to_matrix(),
            ));
            let joint = effect_of_region(&obs, &PhaseRegion::product(&full, &x)?)?;
            dp = dp.max(norm(
                joint.to_matrix() - momentum_effect(&nu, &x)?.to_matrix(),
            ));
        }
    }
    rec.record("margin_theorem.position", dq);
    rec.record("margin_theorem.momentum", dp);
    Ok(())
}

fn gaussian_transform(rec: &mut Recorder) -> Result<()> {
    let g = make_grid(1024, 0.05)?;
    let mut worst: f64 = 0.0;
    for a in [0.25, 0.5, 1.0] {
        for b in [0.0, 0.5] {
            let phi = fourier_transform(&gaussian_state(g, a, b, 0.0, 0.0)?)
                .wave_function(Axis::Momentum);
            for (k, z) in phi.iter().enumerate() {
                worst = worst.max((z - analytic_gaussian_transform(a, b, g.momentum(k))).norm());
            }
        }
    }
    rec.record("gaussian_transform", worst);
    Ok(())
}

fn uncertainty(rec: &mut Recorder, rng: &mut ChaCha8Rng) -> Result<()> {
    let g = make_grid(1024, 0.05)?;
    let t = DensityOperator::pure(gaussian_state(g, 0.5, 0.0, 0.0, 0.0)?)?;
    let product = uncertainty_product(&t, &t)?.product;
    rec.record("uncertainty.equality", (product - 1.0).abs())
        .detail = Some(format!("product {product}"));

    let mut worst = f64::INFINITY;
    for _ in 0..50 {
        let tp = random::tail_safe_gaussian(g, rng);
        let t = DensityOperator::pure(covphase::lattice::gaussian_from_params(g, tp)?)?;
        let s = DensityOperator::pure(random::gaussian_superposition(g, 3, rng)?)?;
        worst = worst.min(uncertainty_product(&t, &s)?.product);
    }
    rec.record("uncertainty.random", worst);
    Ok(())
}

fn pauli(rec: &mut Recorder) -> Result<()> {
    let (a, b) = rec.options.pauli.unwrap_or((0.5, 0.5));
    let report = pauli_pair_demo(a, b, symmetric(16))?;
    rec.record("pauli.margin_distance", report.margin_distance);
    rec.record("pauli.observable_distance", report.observable_distance);
    Ok(())
}

fn self_fourier(rec: &mut Recorder) -> Result<()> {
    let g = symmetric(512);
    let s = 0.125_f64.sqrt();
    let gap = self_fourier_gap(s, s, g)?.max(self_fourier_gap(0.5, 0.0, g)?);
    rec.record("self_fourier.minimum_uncertainty", gap);
    rec.record("self_fourier.broad", self_fourier_gap(1.0, 0.0, g)?);
    Ok(())
}

fn localization(rec: &mut Recorder) -> Result<()> {
    let g = symmetric(16);
    let t = DensityOperator::pure(lattice_gaussian(g, GaussianParams::chirped(0.5, 0.0))?)?;
    let obs = covariant_observable(&t);
    let cell = localization_bound(&obs, &PhaseRegion::cell(g, 3, 11)?)?;
    rec.record("localization.cell", (cell.norm - 1.0 / 16.0).abs());
    let half = PhaseRegion::product(&GridSet::half_line(g, 7), &GridSet::full(g))?;
    rec.record("localization.half", localization_bound(&obs, &half)?.norm);
    let full = localization_bound(&obs, &PhaseRegion::full(g))?;
    rec.record("localization.full", (full.norm - 1.0).abs());
    Ok(())
}

fn dirac_mixture(rec: &mut Recorder) -> Result<()> {
    let g = make_grid(64, 0.25)?;
    let mut worst: f64 = 0.0;
    for t in [0.3, 0.5, 0.7] {
        let r = dirac_mixture_projection(0.0, 1.0, t, g)?;
        worst = worst.max(r.idempotency_defect).max(r.match_defect);
    }
    rec.record("dirac_mixture", worst);
    Ok(())
}

fn max_cell_difference(a: &JointObservable, b: &JointObservable) -> f64 {
    let n = a.grid().n();
    let mut worst: f64 = 0.0;
    for j in 0..n {
        for k in 0..n {
            worst = worst.max(max_abs(&(a.cell_effect(j, k) - b.cell_effect(j, k))));
        }
    }
    worst
}

fn averaging(rec: &mut Recorder, rng: &mut ChaCha8Rng) -> Result<()> {
    let g = symmetric(8);
    let n = g.n();
    let t = random::density(g, rng);
    let obs = covariant_observable(&t);
    rec.record(
        "covariant_average.fixed_point",
        max_cell_difference(&covariant_average(&obs)?, &obs),
    );

    let table = random::normalized_table(g, rng)?;
    let avg = covariant_average(&table)?;
    rec.record("covariant_average.covariance", covariance_defect(&avg));
    rec.record(
        "covariant_average.idempotence",
        max_cell_difference(&covariant_average(&avg)?, &avg),
    );

    // G_T plus a checkerboard term whose rows and columns sum to zero: the margins
    // stay those of G_T, which are covariant.
    let lambda_min = t.weights().iter().copied().fold(f64::INFINITY, f64::min);
    let h = random::hermitian(n, rng);
    let eps = 0.5 * lambda_min / n as f64 / norm(h.clone());
    let cells = (0..n * n)
        .map(|i| {
            let sign = if (i / n + i % n) % 2 == 0 { eps } else { -eps };
            obs.cell_effect(i / n, i % n) + &h * Complex64::new(sign, 0.0)
        })
        .collect();
    let avg = covariant_average(&JointObservable::from_table(g, cells)?)?;
    let (rho, nu) = margin_measures(&t)?;
    let full = GridSet::full(g);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let x = random::set(g, rng);
        let q = effect_of_region(&avg, &PhaseRegion::product(&x, &full)?)?;
        worst = worst.max(norm(q.to_matrix() - position_effect(&rho, &x)?.to_matrix()));
        let p = effect_of_region(&avg, &PhaseRegion::product(&full, &x)?)?;
        worst = worst.max(norm(p.to_matrix() - momentum_effect(&nu, &x)?.to_matrix()));
    }
    rec.record("covariant_average.margins", worst);
    Ok(())
}

/// Largest relative error of the margin variances of `gaussian_joint_state`.
fn joint_state_error(var_q: f64, var_p: f64, g: GridSpec) -> Result<f64> {
    let t = gaussian_joint_state(var_q, var_p, g)?;
    let (rho, nu) = margin_measures(&t)?;
    let eq = (variance(&rho).reliable()? / var_q - 1.0).abs();
    let ep = (variance(&nu).reliable()? / var_p - 1.0).abs();
    Ok(eq.max(ep))
}

fn joint_state(rec: &mut Recorder) -> Result<()> {
    let g = symmetric(128);
    let levels = [0.5, 0.75, 1.0, 1.5, 2.0];
    let mut worst: f64 = 0.0;
    for vq in levels {
        for vp in levels {
            worst = worst.max(joint_state_error(vq, vp, g)?);
        }
    }
    rec.record("joint_state.round_trip", worst);

    match gaussian_joint_state(0.1, 0.1, g) {
        Err(Error::NotJointlyMeasurable { deficit, .. }) => {
            rec.record("joint_state.rejection", (deficit - 0.24).abs());
        }
        Err(e) => return Err(e),
        Ok(_) => {
            rec.record("joint_state.rejection", f64::INFINITY).detail =
                Some("state constructed below the bound".into());
        }
    }

    if let Some(req) = rec.options.joint_state {
        match joint_state_error(req.var_q, req.var_p, g) {
            Ok(err) => {
                rec.record("joint_state.request", err);
            }
            Err(Error::NotJointlyMeasurable { product, deficit }) => {
                let check = rec.record("joint_state.request", f64::INFINITY);
                check.passed = false;
                check.detail = Some(format!(
                    "NotJointlyMeasurable: product {product}, deficit {deficit}"
                ));
            }
            Err(e) => {
                let check = rec.record("joint_state.request", f64::NAN);
                check.passed = false;
                check.detail = Some(e.to_string());
            }
        }
    }
    Ok(())
}

fn noncommutativity(rec: &mut Recorder) -> Result<()> {
    let g = make_grid(64, 0.4)?;
    let half = GridSet::right_half(g);
    let (q, p) = (sharp_position(g, &half)?, sharp_momentum(g, &half)?);
    let sharp = commutator_norm(&q, &p)?;

    let rho = LineMeasure::gaussian_density(g, Axis::Position, 0.5)?;
    let nu = LineMeasure::gaussian_density(g, Axis::Momentum, 0.5)?;
    let x = GridSet::from_interval(g, Axis::Position, -1.0, 1.0);
    let y = GridSet::from_interval(g, Axis::Momentum, -1.0, 1.0);
    let (e, f) = (position_effect(&rho, &x)?, momentum_effect(&nu, &y)?);
    let smooth = commutator_norm(&e, &f)?;

    let g = make_grid(64, 0.25)?;
    let mixture = dirac_mixture_projection(0.0, 1.0, 0.5, g)?;
    let y = GridSet::from_interval(g, Axis::Momentum, 0.0, 3.0);
    let p = sharp_momentum(g, &y)?;
    let projection = commutator_norm(&mixture.effect, &p)?;

    rec.record("noncommutativity", sharp.min(smooth).min(projection))
        .detail = Some(format!(
        "instances {sharp:.6e}, {smooth:.6e}, {projection:.6e}"
    ));

    let g = make_grid(16, 0.5)?;
    let nu = LineMeasure::gaussian_density(g, Axis::Momentum, 0.5)?;
    let f = momentum_effect(&nu, &GridSet::half_line(g, 6))?;
    let dense = HermitianOperator::from_matrix(g, f.to_matrix())?;
    rec.record("noncommutativity.self", commutator_norm(&dense, &dense)?);

    if let Some(pair) = &rec.options.effects {
        let v = commutator_norm(&pair.position, &pair.momentum)?;
        rec.record("noncommutativity.config", v);
    }
    Ok(())
}

fn sampling(rec: &mut Recorder, rng: &mut ChaCha8Rng) -> Result<()> {
    let g = symmetric(8);
    let obs = covariant_observable(&DensityOperator::maximally_mixed(g));
    let table = outcome_distribution(&obs, &random::density(g, rng))?;
    let count = 1_000_000;
    let mut hist = vec![0usize; 64];
    for (j, k) in sample_table(&table, count, rec.options.seed)? {
        hist[j * 8 + k] += 1;
    }
    let expected = count as f64 / 64.0;
    let stat: f64 = hist
        .iter()
        .map(|&o| (o as f64 - expected).powi(2) / expected)
        .sum();
    let chi = ChiSquared::new(63.0).expect("positive degrees of freedom");
    rec.record("sampling.chi_square", 1.0 - chi.cdf(stat))
        .detail = Some(format!("statistic {stat}"));

    let t = DensityOperator::pure(lattice_gaussian(g, GaussianParams::chirped(0.5, 0.2))?)?;
    let table = outcome_distribution(&covariant_observable(&t), &t)?;
    let a = sample_table(&table, 10_000, rec.options.seed)?;
    let b = sample_table(&table, 10_000, rec.options.seed)?;
    let mismatches = a.iter().zip(&b).filter(|(x, y)| x != y).count();
    rec.record("sampling.determinism", mismatches as f64);
    Ok(())
}
