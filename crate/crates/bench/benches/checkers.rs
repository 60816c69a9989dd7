use bimodal_bench::collections;
use bimodal_core::{classify, is_bimodal_by_definition, is_bimodal_by_structure};
use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

fn checkers(c: &mut Criterion) {
    for (name, coll) in collections() {
        let mut group = c.benchmark_group(name);
        group.bench_function("definition", |b| b.iter(|| is_bimodal_by_definition(black_box(&coll))));
        group.bench_function("structure", |b| b.iter(|| is_bimodal_by_structure(black_box(&coll))));
        group.bench_function("classify", |b| b.iter(|| classify(black_box(&coll))));
        group.finish();
    }
}

criterion_group!(benches, checkers);
criterion_main!(benches);
