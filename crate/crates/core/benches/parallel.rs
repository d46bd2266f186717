//! Sequential against rayon execution of the data-parallel loops.
//!
//! Build with `--no-default-features` to compile rayon out entirely; both
//! variants then run sequentially.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fricke_core::cert::{
    build_representation, certification_words, certify_length_formula_with, default_s,
};
use fricke_core::dynamics::{compose_trace_map_with, induced_trace_map, semiconjugacy_check_with};
use fricke_core::growth::estimate_rho_with;
use fricke_core::sample::{random_cyclically_reduced_word, rng_from_seed};
use fricke_core::{fixtures, ExecMode};

const MODES: [(&str, ExecMode); 2] = [
    ("sequential", ExecMode::Sequential),
    ("parallel", ExecMode::Parallel),
];

fn bench_rho(c: &mut Criterion) {
    let f = fixtures::pseudo_anosov_trace4();
    let mut rng = rng_from_seed(1);
    let seeds: Vec<_> = (0..16)
        .map(|_| random_cyclically_reduced_word(&mut rng, 2, 6))
        .collect();
    let mut group = c.benchmark_group("estimate_rho");
    for (name, mode) in MODES {
        group.bench_function(BenchmarkId::new(name, seeds.len()), |b| {
            b.iter(|| estimate_rho_with(black_box(&f), &seeds, 64, 1_000_000, mode).unwrap())
        });
    }
    group.finish();
}

fn bench_certify(c: &mut Criterion) {
    let rep = build_representation(2, 101, &default_s()).unwrap();
    let words = certification_words(2, 5, 200, 16, 0);
    let mut group = c.benchmark_group("certify");
    for (name, mode) in MODES {
        group.bench_function(BenchmarkId::new(name, words.len()), |b| {
            b.iter(|| certify_length_formula_with(&rep, black_box(&words), mode).unwrap())
        });
    }
    group.finish();
}

fn bench_semiconjugacy(c: &mut Criterion) {
    let f = fixtures::pseudo_anosov().pow(3);
    let mut group = c.benchmark_group("semiconjugacy");
    for (name, mode) in MODES {
        group.bench_function(BenchmarkId::new(name, 200), |b| {
            b.iter(|| semiconjugacy_check_with(black_box(&f), 200, 7, mode).unwrap())
        });
    }
    group.finish();
}

fn bench_substitution(c: &mut Criterion) {
    let map = induced_trace_map(&fixtures::pseudo_anosov()).unwrap();
    let mut inner = map.clone();
    for _ in 1..4 {
        inner = compose_trace_map_with(&inner, &map, ExecMode::Sequential);
    }
    let mut group = c.benchmark_group("substitute");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_function(BenchmarkId::new(name, inner.num_terms()), |b| {
            b.iter(|| compose_trace_map_with(black_box(&inner), &map, mode))
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_rho,
    bench_certify,
    bench_semiconjugacy,
    bench_substitution
);
criterion_main!(benches);
