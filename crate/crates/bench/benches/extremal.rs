use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sombor_core::oracle::{extremal_report, local_min_check, DEFAULT_CAP};
use sombor_core::{
    alternating_greedy_all, canonical_form, check_exchange_condition, greedy_tree, DegreeSequence,
    EdgeFunction, InternalDegreeSequence,
};

fn figure_sequence() -> InternalDegreeSequence {
    InternalDegreeSequence::new(vec![5, 4, 3, 3, 3, 2, 2, 2]).unwrap()
}

fn constructions(c: &mut Criterion) {
    let seq = figure_sequence();
    c.bench_function("greedy_tree/fig", |b| b.iter(|| greedy_tree(&seq)));
    c.bench_function("alternating_greedy_all/fig", |b| {
        b.iter(|| alternating_greedy_all(&seq).unwrap())
    });
    let tree = greedy_tree(&seq);
    c.bench_function("canonical_form/n18", |b| b.iter(|| canonical_form(&tree)));
    c.bench_function("local_min_check/n18", |b| {
        b.iter(|| local_min_check(&tree, &EdgeFunction::sombor()))
    });
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("extremal_report");
    group.sample_size(10);
    for text in ["3 3 2 2 1 1 1 1 1 1", "2 2 2 2 2 2 2 2 1 1"] {
        let d = DegreeSequence::parse(text).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(text), &d, |b, d| {
            b.iter(|| extremal_report(d, &EdgeFunction::sombor(), DEFAULT_CAP).unwrap())
        });
    }
    group.finish();
}

fn condition(c: &mut Criterion) {
    let mut group = c.benchmark_group("exchange_condition");
    group.sample_size(10);
    group.bench_function("minus_sombor/50", |b| {
        b.iter(|| check_exchange_condition(&EdgeFunction::minus_sombor(), 50))
    });
    group.finish();
}

criterion_group!(benches, constructions, oracle, condition);
criterion_main!(benches);
