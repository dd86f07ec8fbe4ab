//! Sequential against rayon for the two data-parallel sweeps: the Weyl group
//! maximum behind the rank oracle, and classification over class pairs.
//! Without the `parallel` feature both arms run the same code.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use lietriad_core::catalog::{find_class, Algebra};
use lietriad_core::classify::{classify_algebra, lookup_triad};
use lietriad_core::double::weyl_max_rank_with;
use lietriad_core::Execution;

const ARMS: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn weyl_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("weyl_max_rank");
    group.sample_size(10);
    // Rank strictly below both pair ranks, so the whole group is scanned.
    for (g, k1, k2) in [("su8", "sp4", "s(u3+u5)"), ("so12", "so3+so9", "u6")] {
        let a: Algebra = g.parse().unwrap();
        let t = lookup_triad(a, &find_class(a, k1).unwrap(), &find_class(a, k2).unwrap(), "id").unwrap();
        let ds = t.double_sigma().unwrap();
        for (name, exec) in ARMS {
            group.bench_with_input(BenchmarkId::new(name, g), &ds, |b, ds| {
                b.iter(|| weyl_max_rank_with(black_box(ds), 200_000, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn classify_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify_algebra");
    group.sample_size(10);
    for g in ["so12", "e7"] {
        let a: Algebra = g.parse().unwrap();
        for (name, exec) in ARMS {
            group.bench_with_input(BenchmarkId::new(name, g), &a, |b, &a| {
                b.iter(|| classify_algebra(black_box(a), exec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, weyl_sweep, classify_sweep);
criterion_main!(benches);
