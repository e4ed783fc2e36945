use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use morseflow_core::{
    analyze, compute_lambda, connection_matrix, fixtures, relations, sc_structure, spectral_sequence, AnalysisOptions,
    ReductionOptions,
};
use std::hint::black_box;

fn full_pipeline(c: &mut Criterion) {
    let mut group = c.benchmark_group("analyze");
    group.sample_size(10);
    for name in ["exampleA", "sigma_d3", "sigma_d4"] {
        let braid = fixtures::load(name).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(name), &braid, |b, braid| {
            b.iter(|| analyze(black_box(braid), AnalysisOptions::default()).unwrap())
        });
    }
    group.finish();
}

fn stages(c: &mut Criterion) {
    let braid = fixtures::load("sigma_d4").unwrap();
    let a = analyze(&braid, AnalysisOptions::default()).unwrap();
    let mut group = c.benchmark_group("sigma_d4");
    group.sample_size(10);
    group.bench_function("lambda", |b| b.iter(|| compute_lambda(&a.complex, &a.braid).unwrap()));
    group.bench_function("relations", |b| b.iter(|| relations(&a.complex, &a.lambda).unwrap()));
    group.bench_function("sc_structure", |b| {
        b.iter(|| sc_structure(&a.complex, &a.lambda, &a.relations).unwrap())
    });
    group.bench_function("reduction", |b| {
        b.iter(|| connection_matrix(&a.graded, ReductionOptions::default()).unwrap())
    });
    group.bench_function("reduction_with_maps", |b| {
        let opts = ReductionOptions { chain_maps: true, ..ReductionOptions::default() };
        b.iter(|| connection_matrix(&a.graded, opts).unwrap())
    });
    let conv: Vec<usize> = (0..a.scd.sc.order.size()).collect();
    group.bench_function("spectral_sequence", |b| {
        b.iter(|| spectral_sequence(&a.conley, &a.scd, &conv).unwrap())
    });
    group.finish();
}

criterion_group!(benches, full_pipeline, stages);
criterion_main!(benches);
