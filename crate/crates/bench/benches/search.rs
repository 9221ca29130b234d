use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use uquery::algorithms::{Algorithm1, Oracle};
use uquery::measures::{block_sensitivity_u, certificate_complexity_u};
use uquery::trees::{query_complexity, query_complexity_u};
use uquery::{Caps, HazardFreeTable, TernaryString};
use uquery_bench::fixtures;

fn hazard_table(c: &mut Criterion) {
    let mut group = c.benchmark_group("hazard_table");
    for (name, f) in fixtures(8) {
        group.bench_with_input(BenchmarkId::from_parameter(&name), &f, |b, f| {
            b.iter(|| HazardFreeTable::new(black_box(f)).unwrap())
        });
    }
    group.finish();
}

fn tree_search(c: &mut Criterion) {
    let caps = Caps::default();
    let mut group = c.benchmark_group("tree_search");
    group.sample_size(10);
    for (name, f) in fixtures(7) {
        let t = HazardFreeTable::new(&f).unwrap();
        group.bench_with_input(BenchmarkId::new("D_u", &name), &t, |b, t| {
            b.iter(|| query_complexity_u(black_box(t), &caps).unwrap().0)
        });
        group.bench_with_input(BenchmarkId::new("D", &name), &f, |b, f| {
            b.iter(|| query_complexity(black_box(f), &caps).unwrap().0)
        });
    }
    group.finish();
}

fn measures(c: &mut Criterion) {
    let mut group = c.benchmark_group("measures");
    group.sample_size(10);
    for (name, f) in fixtures(6) {
        let t = HazardFreeTable::new(&f).unwrap();
        group.bench_with_input(BenchmarkId::new("bs_u", &name), &t, |b, t| {
            b.iter(|| block_sensitivity_u(black_box(t)).total)
        });
        group.bench_with_input(BenchmarkId::new("C_u", &name), &t, |b, t| {
            b.iter(|| certificate_complexity_u(black_box(t)).c_u())
        });
    }
    group.finish();
}

fn algorithm1(c: &mut Criterion) {
    let mut group = c.benchmark_group("algorithm1_all_inputs");
    group.sample_size(10);
    for (name, f) in fixtures(5) {
        let t = HazardFreeTable::new(&f).unwrap();
        let solver = Algorithm1::new(&t);
        let inputs: Vec<TernaryString> = TernaryString::all(f.arity()).collect();
        group.bench_function(BenchmarkId::from_parameter(&name), |b| {
            b.iter(|| {
                inputs
                    .iter()
                    .map(|x| solver.run(&mut Oracle::new(x.clone())).unwrap().queries)
                    .sum::<usize>()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, hazard_table, tree_search, measures, algorithm1);
criterion_main!(benches);
