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

//! Position and momentum observables on a periodic lattice, covariant phase-space
//! observables, and numerical checks of their joint measurability.
//!
//! The real line is modelled by an `n`-point torus ([`lattice`]); observables are
//! families of effects on `C^n` ([`operators`], [`povm`]); joint observables live on the
//! `n × n` phase-space torus ([`phasespace`]); [`analysis`] evaluates uncertainty
//! products, margin degeneracy, localization and projection constructions.

pub mod analysis;
pub mod error;
pub mod lattice;
pub mod measures;
pub mod operators;
pub mod phasespace;
pub mod povm;
pub mod random;

pub use analysis::{
    dirac_mixture_projection, gaussian_joint_state, localization_bound, pauli_pair_demo,
    self_fourier_gap, uncertainty_product, UncertaintyReport,
};
pub use error::{Error, Result};
pub use lattice::{
    analytic_gaussian_transform, fourier_transform, gaussian_state, inverse_fourier_transform,
    lattice_gaussian, make_grid, Axis, GaussianParams, GridSpec, StateVector,
};
pub use measures::{
    convolve, dirac, mean, translated_mass, variance, GridSet, LineMeasure, MomentEstimate,
};
pub use operators::{
    conjugate_density, modulation, operator_norm, translation, weyl, CMatrix, DensityOperator,
    Displacement, Effect, HermitianOperator,
};
pub use phasespace::{
    covariant_average, covariant_observable, effect_of_region, is_informationally_complete,
    margin_measures, outcome_distribution, sample_outcomes, JointObservable, OutcomeTable,
    PhaseRegion,
};
pub use povm::{
    commutator_norm, distinguish_measures, momentum_effect, position_effect, OperatorMeasure,
};
