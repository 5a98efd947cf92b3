use std::hint::black_box;

use cliquemdl::{codelength_mix, log2_binomial, Bits};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn binomial(c: &mut Criterion) {
    let mut group = c.benchmark_group("log2_binomial");
    // Small b takes the direct sum, the others the asymptotic form.
    for (a, b) in [
        (1225, 12),
        (1225, 612),
        (1_000_000, 40),
        (1_000_000, 499_999),
    ] {
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("{a}_{b}")),
            &(a, b),
            |bench, &(a, b)| bench.iter(|| log2_binomial(black_box(a), black_box(b))),
        );
    }
    group.finish();
}

fn mix(c: &mut Criterion) {
    let lengths: Vec<Bits> = (0..1024)
        .map(|i| Bits(100.0 + (i % 37) as f64 * 0.5))
        .collect();
    c.bench_function("codelength_mix/1024", |b| {
        b.iter(|| codelength_mix(black_box(&lengths)))
    });
}

criterion_group!(benches, binomial, mix);
criterion_main!(benches);
