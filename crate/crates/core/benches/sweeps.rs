use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use kasami_lab::expsum::{self, SumKernel};
use kasami_lab::sequences;
use kasami_lab::{Exec, FieldContext, Params};

const STRATEGIES: [(&str, Exec); 2] = [("parallel", Exec::Parallel), ("sequential", Exec::Sequential)];

fn spectra(c: &mut Criterion) {
    let mut group = c.benchmark_group("spectrum");
    group.sample_size(10);
    for (n, k) in [(8, 1), (10, 1)] {
        let ctx = FieldContext::new(n, None).unwrap();
        let p = Params::new(n, k).unwrap();
        let kernel = SumKernel::new(&ctx, &p);
        for (name, exec) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(format!("t/{name}"), n), &exec, |b, &e| {
                b.iter(|| black_box(expsum::t_spectrum(&kernel, e)))
            });
            group.bench_with_input(BenchmarkId::new(format!("s/{name}"), n), &exec, |b, &e| {
                b.iter(|| black_box(expsum::s_spectrum(&kernel, e)))
            });
        }
    }
    group.finish();
}

fn correlation(c: &mut Criterion) {
    let mut group = c.benchmark_group("correlation");
    group.sample_size(10);
    for (n, k) in [(6, 2), (8, 1)] {
        let ctx = FieldContext::new(n, None).unwrap();
        let p = Params::new(n, k).unwrap();
        let family = sequences::build_family(&SumKernel::new(&ctx, &p));
        for (name, exec) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, n), &exec, |b, &e| {
                b.iter(|| black_box(sequences::correlation_distribution(&family, e)))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, spectra, correlation);
criterion_main!(benches);
