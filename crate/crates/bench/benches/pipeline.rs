use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use symqubo::synth::example_knapsack;
use symqubo::*;
use symqubo_bench::banded;

fn parse(c: &mut Criterion) {
    let text = write_mps(&banded(200, 40)).unwrap();
    c.bench_function("parse_mps/200x40", |b| b.iter(|| parse_mps(black_box(&text)).unwrap()));
}

fn build(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_reduced");
    for (n, m) in [(20, 5), (60, 15), (120, 30)] {
        let mip = banded(n, m);
        let p = build_partition(&mip, &SignatureConfig::default());
        group.bench_with_input(BenchmarkId::from_parameter(format!("{n}x{m}")), &(mip, p), |b, (mip, p)| {
            b.iter(|| build_reduced(mip, p, &PenaltyWeights::default()).unwrap())
        });
    }
    group.finish();
}

fn sample(c: &mut Criterion) {
    let mip = example_knapsack();
    let p = build_partition(&mip, &SignatureConfig { sharpen_var_coeffs: true, ..Default::default() });
    let model = build_reduced(&mip, &p, &PenaltyWeights::default()).unwrap();
    c.bench_function("enumerate_exact/knapsack", |b| b.iter(|| enumerate_exact(&model, 20, 0.0).unwrap()));
    c.bench_function("zero_set_search/knapsack", |b| b.iter(|| zero_set_search(&model).unwrap()));
    let cfg = AnnealConfig { restarts: 8, sweeps: 500, ..Default::default() };
    c.bench_function("anneal/knapsack", |b| b.iter(|| anneal(&model, &cfg).unwrap()));
}

criterion_group!(benches, parse, build, sample);
criterion_main!(benches);
