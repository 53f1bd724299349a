use std::hint::black_box;

use borosmoll_core::coefficients::{row_double_sum, row_single_sum, rows_by_recurrence, RowTable};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn row_engines(c: &mut Criterion) {
    let mut g = c.benchmark_group("row");
    for m in [20u64, 60, 120] {
        g.bench_with_input(BenchmarkId::new("single_sum", m), &m, |b, &m| b.iter(|| row_single_sum(black_box(m))));
        g.bench_with_input(BenchmarkId::new("double_sum", m), &m, |b, &m| b.iter(|| row_double_sum(black_box(m))));
    }
    g.finish();
}

fn tables(c: &mut Criterion) {
    let mut g = c.benchmark_group("table");
    g.sample_size(10);
    g.bench_function("recurrence_to_125", |b| b.iter(|| rows_by_recurrence(black_box(125))));
    g.bench_function("checked_to_125", |b| b.iter(|| RowTable::build(black_box(125)).unwrap()));
    g.finish();
}

criterion_group!(benches, row_engines, tables);
criterion_main!(benches);
