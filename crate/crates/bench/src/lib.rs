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

//! Benchmark fixtures shared by the criterion targets.

use covphase::{lattice_gaussian, DensityOperator, GaussianParams, GridSpec};

/// Chirped lattice Gaussian on the symmetric grid of size `n`.
pub fn chirped_state(n: usize) -> DensityOperator {
    let g = GridSpec::symmetric(n).expect("valid size");
    let psi = lattice_gaussian(g, GaussianParams::chirped(0.5, 0.3)).expect("normalizable");
    DensityOperator::pure(psi).expect("unit vector")
}
