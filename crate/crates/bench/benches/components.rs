use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use minereduce::construct::generate_initial_solution;
use minereduce::local_search::{rvnd_descent, IlsParams};
use minereduce::mining::mine_maximal_frequent;
use minereduce::reduce::{expand_solution, reduce_instance};
use minereduce_bench::{instance, rng, solutions, transactions};

fn bench_construct(c: &mut Criterion) {
    let mut group = c.benchmark_group("construct");
    for n in [50, 100, 200] {
        let inst = instance(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &inst, |b, inst| {
            let mut r = rng(1);
            b.iter(|| black_box(generate_initial_solution(inst, &mut r).unwrap()));
        });
    }
    group.finish();
}

fn bench_descent(c: &mut Criterion) {
    let mut group = c.benchmark_group("rvnd_descent");
    group.sample_size(10);
    for n in [50, 100] {
        let inst = instance(n);
        let start = solutions(&inst, 1).remove(0);
        let params = IlsParams::default();
        group.bench_with_input(BenchmarkId::from_parameter(n), &inst, |b, inst| {
            let mut r = rng(2);
            b.iter(|| black_box(rvnd_descent(inst, &start, &params, &mut r)));
        });
    }
    group.finish();
}

fn bench_miner(c: &mut Criterion) {
    let mut group = c.benchmark_group("mine_maximal_frequent");
    let inst = instance(100);
    for t in [5, 10, 20] {
        let db = transactions(&inst, t);
        group.bench_with_input(BenchmarkId::from_parameter(t), &db, |b, db| {
            b.iter(|| black_box(mine_maximal_frequent(db, 0.2).unwrap()));
        });
    }
    group.finish();
}

fn bench_reduce_expand(c: &mut Criterion) {
    let inst = instance(100);
    // contiguous disjoint segments over a third of the customers
    let segments: Vec<(Vec<usize>, usize)> =
        (0..11).map(|i| ((3 * i + 1..3 * i + 4).collect(), 0)).collect();
    c.bench_function("reduce_instance/100", |b| {
        b.iter(|| black_box(reduce_instance(&inst, &segments).unwrap()));
    });
    let (red, map) = reduce_instance(&inst, &segments).unwrap();
    let sol = solutions(&red, 1).remove(0);
    c.bench_function("expand_solution/100", |b| {
        b.iter(|| black_box(expand_solution(&inst, &sol, &map).unwrap()));
    });
}

criterion_group!(benches, bench_construct, bench_descent, bench_miner, bench_reduce_expand);
criterion_main!(benches);
