use std::hint::black_box;

use betti_core::betti_formula::betti_polynomial_with;
use betti_core::exact_oracle::{koszul_table, IdealPieces, OracleOptions};
use betti_core::Execution;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn modes() -> Vec<(&'static str, Execution)> {
    let mut out = vec![("sequential", Execution::Sequential)];
    if cfg!(feature = "parallel") {
        out.push(("parallel", Execution::Parallel));
    }
    out
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    for (a, b, m, n, max_j) in [(1, 2, 2, 2, 8), (2, 1, 3, 3, 8), (1, 2, 3, 3, 8)] {
        let case = format!("I{a}x{b}_m{m}n{n}_j{max_j}");
        for (name, exec) in modes() {
            let options = OracleOptions { exec, ..OracleOptions::default() };
            group.bench_with_input(BenchmarkId::new(name, &case), &options, |bench, options| {
                bench.iter(|| koszul_table(a, b, m, n, m * n, max_j, black_box(options)).unwrap())
            });
        }
    }
    group.finish();
}

fn ideal_pieces(c: &mut Criterion) {
    let mut group = c.benchmark_group("ideal_pieces");
    group.sample_size(10);
    for (name, exec) in modes() {
        group.bench_function(BenchmarkId::new(name, "I2x2_m3n3_d8"), |bench| {
            bench.iter(|| IdealPieces::build(2, 2, 3, 3, black_box(8), exec).unwrap())
        });
    }
    group.finish();
}

fn formula(c: &mut Criterion) {
    let mut group = c.benchmark_group("formula");
    for (name, exec) in modes() {
        group.bench_function(BenchmarkId::new(name, "I2x3_m6n5"), |bench| {
            bench.iter(|| betti_polynomial_with(2, 3, black_box(6), 5, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, oracle, ideal_pieces, formula);
criterion_main!(benches);
