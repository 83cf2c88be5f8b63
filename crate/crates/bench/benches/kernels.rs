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

use covphase::{
    covariant_average, covariant_observable, effect_of_region, fourier_transform, make_grid,
    outcome_distribution, position_effect, random, Axis, GridSet, GridSpec, LineMeasure,
    PhaseRegion,
};
use covphase_bench::chirped_state;
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fft(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut group = c.benchmark_group("fourier_transform");
    for n in [256, 1024, 4096] {
        let psi = random::state(make_grid(n, 0.05).unwrap(), &mut rng);
        group.bench_with_input(BenchmarkId::from_parameter(n), &psi, |b, psi| {
            b.iter(|| fourier_transform(black_box(psi)))
        });
    }
    group.finish();
}

fn position_effects(c: &mut Criterion) {
    let g = make_grid(1024, 0.05).unwrap();
    let rho = LineMeasure::gaussian_density(g, Axis::Position, 0.5).unwrap();
    let x = GridSet::right_half(g);
    c.bench_function("position_effect/1024", |b| {
        b.iter(|| position_effect(black_box(&rho), black_box(&x)))
    });
}

fn region_effect(c: &mut Criterion) {
    let t = chirped_state(16);
    let g = t.grid();
    let obs = covariant_observable(&t);
    let z = PhaseRegion::product(&GridSet::half_line(g, 7), &GridSet::full(g)).unwrap();
    c.bench_function("effect_of_region/16", |b| {
        b.iter(|| effect_of_region(black_box(&obs), black_box(&z)))
    });
}

fn averaging(c: &mut Criterion) {
    let g = GridSpec::symmetric(8).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let table = random::normalized_table(g, &mut rng).unwrap();
    c.bench_function("covariant_average/8", |b| {
        b.iter(|| covariant_average(black_box(&table)))
    });
}

fn outcomes(c: &mut Criterion) {
    let mut group = c.benchmark_group("outcome_distribution");
    for n in [16, 32] {
        let t = chirped_state(n);
        let obs = covariant_observable(&t);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| outcome_distribution(black_box(&obs), black_box(&t)))
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    fft,
    position_effects,
    region_effect,
    averaging,
    outcomes
);
criterion_main!(benches);
