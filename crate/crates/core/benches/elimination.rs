//! Sequential against data-parallel elimination on the graded matrices.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fpp_core::verify::{multiplication_matrix, ResolutionBuilder};
use fpp_core::{embedded_corpus, ModularEmbedding, Parallelism};

const MODES: [(&str, Parallelism); 2] = [("sequential", Parallelism::Sequential), ("parallel", Parallelism::Parallel)];

fn rank(c: &mut Criterion) {
    let corpus = embedded_corpus();
    let e = ModularEmbedding::new(263).unwrap();
    let mut group = c.benchmark_group("rank");
    group.sample_size(10);
    for d in [5, 6] {
        let m = multiplication_matrix(&corpus, d, &e).unwrap();
        for (name, mode) in MODES {
            group.bench_with_input(BenchmarkId::new(name, format!("degree {d}")), &m, |b, m| b.iter(|| m.rank_with(mode)));
        }
    }
    group.finish();
}

fn kernel(c: &mut Criterion) {
    let corpus = embedded_corpus();
    let e = ModularEmbedding::new(263).unwrap();
    let m5 = multiplication_matrix(&corpus, 5, &e).unwrap();
    let mut group = c.benchmark_group("left kernel degree 5");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_function(name, |b| b.iter(|| m5.left_kernel_basis_with(mode)));
    }
    group.finish();
}

fn resolution(c: &mut Criterion) {
    let corpus = embedded_corpus();
    let e = ModularEmbedding::new(263).unwrap();
    let mut group = c.benchmark_group("betti steps 1-3");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| {
                let mut builder = ResolutionBuilder::with_parallelism(&corpus, &e, mode).unwrap();
                (1..=3).map(|s| builder.step(s).unwrap().betti).collect::<Vec<_>>()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, rank, kernel, resolution);
criterion_main!(benches);
