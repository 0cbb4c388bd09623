//! Gamma layer, the expansions and the Hardy function at a range of heights.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;
use rszeta_core::eval::{hardy_z, hardy_z_cos, z_afe, z_afe_smoothed, z_direct};
use rszeta_core::special::{log_gamma, tau_of_t, x_factor, DEFAULT_STIRLING_ORDER};
use rszeta_core::{AfeConfig, AfeConstants, CoefficientTable, ComplexPoint, SmoothWeight};

fn gamma_layer(c: &mut Criterion) {
    let z = Complex64::new(0.5, 1000.0);
    c.bench_function("log_gamma", |b| {
        b.iter(|| log_gamma(black_box(z), DEFAULT_STIRLING_ORDER).unwrap())
    });
    c.bench_function("x_factor", |b| {
        b.iter(|| x_factor(black_box(z), 12).unwrap())
    });
    c.bench_function("tau_of_t", |b| {
        b.iter(|| tau_of_t(black_box(1000.0), 12).unwrap())
    });
}

fn expansions(c: &mut Criterion) {
    let table = CoefficientTable::discriminant(400_000).unwrap();
    let w = SmoothWeight::default();
    let mut g = c.benchmark_group("expansions");
    for t in [100.0, 1000.0, 2500.0] {
        let cfg = AfeConfig::symmetric(t, 12).unwrap();
        let s = ComplexPoint::critical(t).unwrap();
        g.bench_with_input(BenchmarkId::new("sharp", t), &t, |b, _| {
            b.iter(|| z_afe(black_box(s), &cfg, &table).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("smoothed", t), &t, |b, &t| {
            b.iter(|| z_afe_smoothed(black_box(t), cfg.x(), cfg.y(), &w, &table).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("hardy", t), &t, |b, &t| {
            b.iter(|| hardy_z(black_box(t), &table, &AfeConstants::default()).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("hardy_cos", t), &t, |b, &t| {
            b.iter(|| hardy_z_cos(black_box(t), &table).unwrap())
        });
    }
    let s = ComplexPoint::new(0.9, 20.0).unwrap();
    g.bench_function("direct/400000", |b| {
        b.iter(|| z_direct(black_box(s), &table, table.len(), 0.63, 0.39).unwrap())
    });
    g.finish();
}

criterion_group!(benches, gamma_layer, expansions);
criterion_main!(benches);
