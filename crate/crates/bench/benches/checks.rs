use std::hint::black_box;

use borosmoll_core::bounds::{check_ratio_bounds, theorem15_report, RootTheorem};
use borosmoll_core::coefficients::RowTable;
use borosmoll_core::identities::{verify_identity, Identity, IdentityCheck};
use borosmoll_core::logconcavity::check_2lc;
use borosmoll_core::realroots::{conjecture_sweep, Family};
use borosmoll_core::{Forms, PolyTable};
use criterion::{criterion_group, criterion_main, Criterion};

fn row_checks(c: &mut Criterion) {
    let rows = RowTable::build(201).unwrap();
    let table = PolyTable::builtin();
    let f = Forms::new(&table);
    let (cur, next) = (rows.row(200), rows.row(201));
    let mut g = c.benchmark_group("m200");
    g.sample_size(10);
    g.bench_function("check_2lc", |b| b.iter(|| check_2lc(black_box(cur)).unwrap()));
    g.bench_function("ratio_bounds", |b| b.iter(|| check_ratio_bounds(cur, next).unwrap()));
    g.bench_function("theorem15", |b| b.iter(|| theorem15_report(&f, cur, next).unwrap()));
    g.bench_function("theorem31", |b| b.iter(|| RootTheorem::T31.report(&f, cur, next, 1).unwrap()));
    g.finish();
}

fn identities(c: &mut Criterion) {
    let table = PolyTable::builtin();
    let f = Forms::new(&table);
    let mut g = c.benchmark_group("identity");
    g.sample_size(10);
    for id in [Identity::Delta1ClosedForm, Identity::KDifference, Identity::Y3ClosedForm] {
        g.bench_function(id.name(), |b| b.iter(|| verify_identity(&f, &IdentityCheck::new(id))));
    }
    g.finish();
}

fn sturm(c: &mut Criterion) {
    let mut g = c.benchmark_group("sturm");
    g.sample_size(10);
    g.bench_function("q_to_20", |b| b.iter(|| conjecture_sweep(Family::Q, black_box(20))));
    g.finish();
}

criterion_group!(benches, row_checks, identities, sturm);
criterion_main!(benches);
