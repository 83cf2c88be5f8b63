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

mod common;

use common::{rng, spectral_norm};
use covphase::analysis::half_period_set;
use covphase::{
    covariant_observable, dirac_mixture_projection, gaussian_joint_state, gaussian_state,
    lattice_gaussian, localization_bound, margin_measures, pauli_pair_demo, position_effect,
    random, self_fourier_gap, uncertainty_product, variance, Axis, DensityOperator, Error,
    GaussianParams, GridSet, GridSpec, LineMeasure, PhaseRegion,
};

fn pure(g: GridSpec, a: f64, b: f64) -> DensityOperator {
    DensityOperator::pure(gaussian_state(g, a, b, 0.0, 0.0).unwrap()).unwrap()
}

#[test]
fn minimum_uncertainty_pair_saturates() {
    let g = GridSpec::new(1024, 0.05).unwrap();
    let t = pure(g, 0.5, 0.0);
    let report = uncertainty_product(&t, &t).unwrap();
    assert!(
        (0.98..=1.02).contains(&report.product),
        "{}",
        report.product
    );
}

#[test]
fn random_states_respect_the_bound() {
    let g = GridSpec::new(1024, 0.05).unwrap();
    let mut r = rng(21);
    for _ in 0..50 {
        let tp = random::tail_safe_gaussian(g, &mut r);
        let t =
            DensityOperator::pure(covphase::lattice::gaussian_from_params(g, tp).unwrap()).unwrap();
        let s =
            DensityOperator::pure(random::gaussian_superposition(g, 3, &mut r).unwrap()).unwrap();
        let report = uncertainty_product(&t, &s).unwrap();
        assert!(report.product >= 0.98, "{}", report.product);
        // variances of a convolution add
        assert!((report.var_q_total - report.state_var_q - report.rho_var).abs() <= 1e-6);
        assert!((report.var_p_total - report.state_var_p - report.nu_var).abs() <= 1e-6);
    }
}

#[test]
fn squeezed_probe_exceeds_the_bound() {
    let g = GridSpec::new(1024, 0.05).unwrap();
    let report = uncertainty_product(&pure(g, 0.5, 0.0), &pure(g, 2.0, 0.0)).unwrap();
    // (1/8 + 1/2)(2 + 1/2)
    assert!((report.product - 1.5625).abs() <= 1e-6);
}

#[test]
fn joint_state_rejects_products_below_a_quarter() {
    let g = GridSpec::symmetric(64).unwrap();
    match gaussian_joint_state(0.1, 0.1, g) {
        Err(Error::NotJointlyMeasurable { product, deficit }) => {
            assert!((product - 0.01).abs() < 1e-15);
            assert!((deficit - 0.24).abs() < 1e-15);
        }
        other => panic!("expected rejection, got {other:?}"),
    }
    assert!(matches!(
        gaussian_joint_state(-1.0, 1.0, g),
        Err(Error::InvalidParameter { name: "var_q", .. })
    ));
}

#[test]
fn joint_state_shapes() {
    let g = GridSpec::symmetric(64).unwrap();
    let t = gaussian_joint_state(0.5, 0.5, g).unwrap();
    assert_eq!(t.rank(), 1);
    let t = gaussian_joint_state(1.0, 1.0, g).unwrap();
    assert!(t.purity() < 1.0 - 1e-3);
}

#[test]
fn joint_state_round_trip() {
    let g = GridSpec::symmetric(128).unwrap();
    let levels = [0.5, 0.75, 1.0, 1.5, 2.0];
    for &vq in &levels {
        for &vp in &levels {
            let t = gaussian_joint_state(vq, vp, g).unwrap();
            let (rho, nu) = margin_measures(&t).unwrap();
            let rq = variance(&rho).reliable().unwrap();
            let rp = variance(&nu).reliable().unwrap();
            assert!((rq / vq - 1.0).abs() <= 0.01, "({vq}, {vp}): {rq}");
            assert!((rp / vp - 1.0).abs() <= 0.01, "({vq}, {vp}): {rp}");
        }
    }
}

#[test]
fn pauli_pair_shares_margins() {
    let g = GridSpec::symmetric(16).unwrap();
    let report = pauli_pair_demo(0.5, 0.5, g).unwrap();
    assert!(report.margin_distance <= 1e-8);
    assert!(report.observable_distance >= 1e-6);

    // every cell differs by the same amount
    let t1 = DensityOperator::pure(lattice_gaussian(g, GaussianParams::chirped(0.5, 0.5)).unwrap())
        .unwrap();
    let t2 =
        DensityOperator::pure(lattice_gaussian(g, GaussianParams::chirped(0.5, -0.5)).unwrap())
            .unwrap();
    let (g1, g2) = (covariant_observable(&t1), covariant_observable(&t2));
    let mut worst: f64 = 0.0;
    for j in 0..16 {
        for k in 0..16 {
            worst = worst.max(spectral_norm(
                &(g1.cell_effect(j, k) - g2.cell_effect(j, k)),
            ));
        }
    }
    assert!((worst - report.observable_distance).abs() <= 1e-12);
    assert!(matches!(
        pauli_pair_demo(0.5, 0.0, g),
        Err(Error::InvalidParameter { name: "b", .. })
    ));
}

#[test]
fn pauli_margin_variances_on_a_fine_grid() {
    let g = GridSpec::new(1024, 0.05).unwrap();
    let report = pauli_pair_demo(0.5, 0.5, g).unwrap();
    assert!(report.tail_safe);
    assert!((report.rho_variance.reliable().unwrap() - 0.5).abs() <= 1e-3);
    // (a² + b²) / a
    assert!((report.nu_variance.reliable().unwrap() - 1.0).abs() <= 1e-3);
}

#[test]
fn self_fourier_states() {
    let g = GridSpec::symmetric(512).unwrap();
    let s = 1.0 / 8f64.sqrt();
    assert!(self_fourier_gap(s, s, g).unwrap() <= 1e-6);
    assert!(self_fourier_gap(s, -s, g).unwrap() <= 1e-6);
    assert!(self_fourier_gap(0.5, 0.0, g).unwrap() <= 1e-6);
    assert!(self_fourier_gap(1.0, 0.0, g).unwrap() >= 0.05);
    assert!(matches!(
        self_fourier_gap(0.5, 0.0, GridSpec::new(512, 0.05).unwrap()),
        Err(Error::InvalidGrid(_))
    ));
}

#[test]
fn localization() {
    let g = GridSpec::symmetric(16).unwrap();
    let phi = lattice_gaussian(g, GaussianParams::chirped(0.5, 0.0)).unwrap();
    let obs = covariant_observable(&DensityOperator::pure(phi).unwrap());
    let cell = localization_bound(&obs, &PhaseRegion::cell(g, 3, 11).unwrap()).unwrap();
    assert!((cell.norm - 1.0 / 16.0).abs() <= 1e-10);

    let half = PhaseRegion::product(&GridSet::half_line(g, 7), &GridSet::full(g)).unwrap();
    let report = localization_bound(&obs, &half).unwrap();
    assert!(report.proper_subregion);
    assert!(report.norm <= 1.0 - 1e-6);
    assert_eq!(report.full_support_margins, Some(true));
    assert_eq!(report.strictly_below_one, Some(true));

    let full = localization_bound(&obs, &PhaseRegion::full(g)).unwrap();
    assert!((full.norm - 1.0).abs() <= 1e-10);
    assert!(!full.proper_subregion);
}

#[test]
fn dirac_mixtures_give_projections() {
    let g = GridSpec::new(64, 0.25).unwrap();
    let mut sets = Vec::new();
    for t in [0.3, 0.5, 0.7] {
        let report = dirac_mixture_projection(0.0, 1.0, t, g).unwrap();
        assert!(report.idempotency_defect <= 1e-12);
        assert!(report.match_defect <= 1e-12);
        sets.push(report.set);
    }
    assert!(sets.windows(2).all(|w| w[0] == w[1]));
    assert_eq!(sets[0], half_period_set(g, 4));

    // a smooth ρ on the same set is far from sharp
    let rho = LineMeasure::gaussian_density(g, Axis::Position, 0.5).unwrap();
    let e = position_effect(&rho, &sets[0]).unwrap();
    assert!(e.idempotency_defect() > 0.1);

    assert!(dirac_mixture_projection(0.0, 1.0, 1.0, g).is_err());
    assert!(dirac_mixture_projection(0.0, 0.3, 0.5, g).is_err());
}
