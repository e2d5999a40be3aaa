use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use num_complex::Complex64;
use zetaphase::{theta_series, z_triple, zeta_jet, KappaEngine};

fn zeta_kernels(c: &mut Criterion) {
    c.bench_function("zeta_jet 0.5+100i", |b| {
        b.iter(|| zeta_jet(black_box(Complex64::new(0.5, 100.0))).unwrap())
    });
    c.bench_function("zeta_jet reflected -20+30i", |b| {
        b.iter(|| zeta_jet(black_box(Complex64::new(-20.0, 30.0))).unwrap())
    });
    c.bench_function("theta_series 500", |b| {
        b.iter(|| theta_series(black_box(500.0)).unwrap())
    });
    c.bench_function("z_triple 77", |b| b.iter(|| z_triple(black_box(77.0)).unwrap()));
}

fn kappa_kernels(c: &mut Criterion) {
    let engine = KappaEngine::new();
    engine.kappa_of(100.0).unwrap();
    c.bench_function("kappa_of 73.3 (warm table)", |b| {
        b.iter(|| engine.kappa_of(black_box(73.3)).unwrap())
    });
    c.bench_function("kappa_d1 42", |b| {
        b.iter(|| zetaphase::kappa_d1(black_box(42.0)).unwrap())
    });
}

criterion_group!(benches, zeta_kernels, kappa_kernels);
criterion_main!(benches);
