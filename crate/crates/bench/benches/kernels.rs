use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use wilsonqs::operators::hamiltonian_matrix;
use wilsonqs::reconstruct::full_potential;
use wilsonqs::specfun::{log_gamma_complex, QuadratureSpec};
use wilsonqs::system::phase_shift;
use wilsonqs::wilson::{orthogonality_check, wilson_eval, wilson_sequence, EvalMethod};
use wilsonqs::{Complex64, Grid, Method, SystemParams, WilsonParams};

fn fig_params() -> WilsonParams {
    WilsonParams::new(0.8, 0.3, 0.6, 0.5).unwrap()
}

fn special_functions(c: &mut Criterion) {
    c.bench_function("log_gamma_complex", |b| {
        b.iter(|| log_gamma_complex(black_box(Complex64::new(0.3, 2.7))))
    });
    c.bench_function("phase_shift", |b| {
        let w = fig_params();
        b.iter(|| phase_shift(black_box(1.3), &w))
    });
}

fn wilson(c: &mut Criterion) {
    let w = fig_params();
    let mut group = c.benchmark_group("wilson");
    for n in [10usize, 40] {
        group.bench_with_input(BenchmarkId::new("recursion", n), &n, |b, &n| {
            b.iter(|| wilson_sequence(n, black_box(0.7), &w))
        });
    }
    group.bench_function("series_n15", |b| {
        b.iter(|| wilson_eval(15, black_box(0.7), &w, EvalMethod::Series))
    });
    group.sample_size(20);
    group.bench_function("orthogonality_5_3", |b| {
        let spec = QuadratureSpec::default();
        b.iter(|| orthogonality_check(5, 3, &w, &spec))
    });
    group.finish();
}

fn operators(c: &mut Criterion) {
    c.bench_function("hamiltonian_order_40", |b| {
        b.iter(|| hamiltonian_matrix(black_box(40), 0.5, 0.8, 0.6))
    });
    let p = SystemParams::new(0.5, fig_params()).unwrap();
    let grid = Grid::new(-16.0, 16.0, 401).unwrap();
    let mut group = c.benchmark_group("reconstruct");
    for method in [Method::FullMatrix, Method::FirstColumn] {
        group.bench_function(method.label(), |b| {
            b.iter(|| full_potential(&p, 20, &grid, method))
        });
    }
    group.finish();
}

criterion_group!(benches, special_functions, wilson, operators);
criterion_main!(benches);
