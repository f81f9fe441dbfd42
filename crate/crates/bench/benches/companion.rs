use companion_bench::{frobenius, generic_ulh, parametric_six_by_six, seven_by_seven};
use companion_core::companion::is_companion_structural;
use companion_core::det::{det_bareiss, det_cofactor};
use companion_core::matrix::charpoly_oracle;
use companion_core::{
    charpoly, enumerate_patterns, fiedler_mixed_superpattern_search, is_companion_direct,
    is_pb_companion, length_le2_criterion, nilpotent_complete, Family, SymMatrix,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn charpolys(c: &mut Criterion) {
    let mut group = c.benchmark_group("charpoly");
    for n in [4, 6, 8] {
        let a = generic_ulh(n);
        group.bench_with_input(BenchmarkId::new("recurrence", n), &a, |b, a| {
            b.iter(|| charpoly(black_box(a)))
        });
        if n <= 6 {
            group.bench_with_input(BenchmarkId::new("cofactor", n), &a, |b, a| {
                b.iter(|| charpoly_oracle(black_box(a)).unwrap())
            });
        }
    }
    group.finish();
}

fn companion_tests(c: &mut Criterion) {
    let mut group = c.benchmark_group("companion");
    let f = frobenius(8);
    group.bench_function("direct/frobenius8", |b| {
        b.iter(|| is_companion_direct(black_box(&f)).unwrap())
    });
    group.bench_function("structural/frobenius8", |b| {
        b.iter(|| is_companion_structural(black_box(&f)).unwrap())
    });
    let partial = SymMatrix::parse(
        "order 6\na 1 0 0 0 0\nc b 1 0 0 0\n0 0 0 1 0 0\ng f e d 1 0\n0 0 0 0 0 1\n0 0 0 0 0 0\n",
    )
    .unwrap();
    group.bench_function("nilpotent_complete/6", |b| {
        b.iter(|| nilpotent_complete(black_box(&partial), &[3, 5, 6]).unwrap())
    });
    group.finish();
}

fn pb(c: &mut Criterion) {
    let mut group = c.benchmark_group("pb");
    let seven = seven_by_seven();
    let six = parametric_six_by_six();
    group.bench_function("full/7x7", |b| {
        b.iter(|| is_pb_companion(black_box(&seven)).unwrap())
    });
    group.bench_function("full/6x6_parametric", |b| {
        b.iter(|| is_pb_companion(black_box(&six)).unwrap())
    });
    group.bench_function("criterion/6x6_parametric", |b| {
        b.iter(|| length_le2_criterion(black_box(&six)).unwrap())
    });
    let grid = generic_ulh(5).rows();
    group.bench_function("det_bareiss/5", |b| {
        b.iter(|| det_bareiss(black_box(&grid)))
    });
    group.bench_function("det_cofactor/5", |b| {
        b.iter(|| det_cofactor(black_box(&grid)))
    });
    group.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumeration");
    group.sample_size(10);
    group.bench_function("H/5", |b| {
        b.iter(|| enumerate_patterns(5, Family::H).count())
    });
    group.bench_function("C/6", |b| {
        b.iter(|| enumerate_patterns(6, Family::C).count())
    });
    group.bench_function("search/4", |b| {
        b.iter(|| fiedler_mixed_superpattern_search(4, None, 1).unwrap())
    });
    group.finish();
}

criterion_group!(benches, charpolys, companion_tests, pb, enumeration);
criterion_main!(benches);
