//! Sequential vs rayon evaluation of hyperbolic kernel rows.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use loglap::hyperbolic::{frac_kernel, kernel_config, linear_grid, log_kernels, KernelRoute};
use loglap::par::{try_map, try_map_seq};

fn frac_rows(c: &mut Criterion) {
    let cfg = kernel_config();
    let mut group = c.benchmark_group("frac_kernel_n3");
    group.sample_size(10);
    for points in [16usize, 64] {
        let grid = linear_grid(0.1, 12.0, points).unwrap();
        let row = |&r: &f64| frac_kernel(3, 0.5, r, KernelRoute::TimeQuadrature, &cfg);
        group.bench_with_input(BenchmarkId::new("sequential", points), &grid, |b, g| {
            b.iter(|| try_map_seq(black_box(g), row).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("parallel", points), &grid, |b, g| {
            b.iter(|| try_map(black_box(g), row).unwrap())
        });
    }
    group.finish();
}

fn log_rows(c: &mut Criterion) {
    let cfg = kernel_config();
    let mut group = c.benchmark_group("log_kernels_n2");
    group.sample_size(10);
    let grid = linear_grid(0.1, 12.0, 32).unwrap();
    let row = |&r: &f64| log_kernels(2, r, &cfg);
    group.bench_function("sequential", |b| b.iter(|| try_map_seq(black_box(&grid), row).unwrap()));
    group.bench_function("parallel", |b| b.iter(|| try_map(black_box(&grid), row).unwrap()));
    group.finish();
}

criterion_group!(benches, frac_rows, log_rows);
criterion_main!(benches);
