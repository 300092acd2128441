use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nonavg_core::constructions::bosznay;
use nonavg_core::geometry::{depth_report, PointSet};
use nonavg_core::search::h_exact;
use nonavg_core::{is_non_averaging, subset_sums, Budgets, IntSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sums(c: &mut Criterion) {
    let budgets = Budgets::default();
    let mut group = c.benchmark_group("subset_sums");
    for q in [8, 14, 20] {
        let set = bosznay(q).unwrap().set;
        group.bench_with_input(BenchmarkId::new("bosznay", q), &set, |b, set| {
            b.iter(|| subset_sums(black_box(set), &budgets).unwrap())
        });
    }
    group.finish();

    let set = bosznay(16).unwrap().set;
    c.bench_function("is_non_averaging/bosznay16", |b| {
        b.iter(|| is_non_averaging(black_box(&set), &budgets).unwrap())
    });
}

fn search(c: &mut Criterion) {
    let budgets = Budgets::default();
    let mut group = c.benchmark_group("h_exact");
    group.sample_size(10);
    for n in [16u64, 24, 32] {
        group.bench_with_input(BenchmarkId::new("serial", n), &n, |b, &n| {
            b.iter(|| h_exact(n, None, &budgets).unwrap())
        });
    }
    group.bench_function("parallel4/32", |b| {
        b.iter(|| h_exact(32, Some(4), &budgets).unwrap())
    });
    group.finish();
}

fn depth(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut group = c.benchmark_group("tukey_depth");
    for (dim, n) in [(2usize, 50usize), (2, 200), (3, 30)] {
        let points: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..dim).map(|_| rng.gen_range(-1000..=1000)).collect())
            .collect();
        let set = PointSet::from(&IntSet::new(dim, points).unwrap());
        group.bench_with_input(BenchmarkId::new(format!("{dim}d"), n), &set, |b, set| {
            b.iter(|| depth_report(black_box(set), 1).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, sums, search, depth);
criterion_main!(benches);
