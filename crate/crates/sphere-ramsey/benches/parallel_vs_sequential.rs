//! Benchmarks the data-parallel sweeps against their sequential twins.
//!
//! `verify_chi` dispatches on the `parallel` feature while `verify_chi_seq`
//! always runs single-threaded, so one binary compares both paths. The
//! remaining benches measure the feature-selected path of the other grid
//! sweeps; rebuild with `--no-default-features` to time their fallbacks.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sphere_ramsey::coloring::{verify_chi, verify_chi_seq};
use sphere_ramsey::propagation::{diamond_params, simulate_propagation, DiamondVariant};
use sphere_ramsey::sqrt2::{strip_grid, sweep_coverage};
use sphere_ramsey::sqrt3::discriminant_check;
use sphere_ramsey::tol::Tolerances;

fn bench_verify(c: &mut Criterion) {
    let tol = Tolerances::default();
    let mut group = c.benchmark_group("triple_verification");
    for samples in [10_000u64, 50_000] {
        group.bench_with_input(
            BenchmarkId::new("dispatched", samples),
            &samples,
            |b, &n| b.iter(|| verify_chi(n, 7, &tol)),
        );
        group.bench_with_input(
            BenchmarkId::new("sequential", samples),
            &samples,
            |b, &n| b.iter(|| verify_chi_seq(n, 7, &tol)),
        );
    }
    group.finish();
}

fn bench_sweeps(c: &mut Criterion) {
    let tol = Tolerances::default();
    let grid = strip_grid(60);
    c.bench_function("strip_coverage_3600", |b| {
        b.iter(|| sweep_coverage(&grid, &tol).unwrap())
    });
    c.bench_function("discriminant_identity_100k", |b| {
        b.iter(|| discriminant_check(100_000))
    });
    let report = diamond_params(1.32, 1.0, DiamondVariant::Equilateral).unwrap();
    c.bench_function("fold_simulation_4096", |b| {
        b.iter(|| simulate_propagation(&report, 4096).unwrap())
    });
}

criterion_group!(benches, bench_verify, bench_sweeps);
criterion_main!(benches);
