use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use ternopt_core::code::min_weight_leq3_search;
use ternopt_core::conditions::{check_c2, check_c3};
use ternopt_core::identities::c2_lhs;
use ternopt_core::{factor, FieldCtx};

fn field_mul(c: &mut Criterion) {
    let mut group = c.benchmark_group("field_mul");
    for m in [4u32, 8, 12, 20] {
        let ctx = FieldCtx::build(m).unwrap();
        let xs: Vec<_> = (0..256u64)
            .map(|i| ctx.element_at((i * 2_654_435_761) % ctx.size()))
            .collect();
        group.bench_with_input(BenchmarkId::from_parameter(m), &xs, |b, xs| {
            b.iter(|| {
                xs.windows(2)
                    .fold(xs[0], |acc, w| ctx.add(acc, ctx.mul(w[0], w[1])))
            })
        });
    }
    group.finish();
}

fn condition_scans(c: &mut Criterion) {
    let mut group = c.benchmark_group("condition_scan");
    group.sample_size(10);
    for (m, e) in [(6u32, 86u64), (8, 86), (10, 734)] {
        let ctx = FieldCtx::build(m).unwrap();
        group.bench_function(BenchmarkId::new("c2", m), |b| {
            b.iter(|| check_c2(&ctx, black_box(e)))
        });
        group.bench_function(BenchmarkId::new("c3", m), |b| {
            b.iter(|| check_c3(&ctx, black_box(e)))
        });
    }
    group.finish();
}

fn weight_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("weight_search");
    group.sample_size(10);
    for (m, e) in [(4u32, 14u64), (6, 86), (8, 86)] {
        let ctx = FieldCtx::build(m).unwrap();
        group.bench_function(BenchmarkId::from_parameter(m), |b| {
            b.iter(|| min_weight_leq3_search(&ctx, black_box(e)).unwrap())
        });
    }
    group.finish();
}

fn factorization(c: &mut Criterion) {
    let (f, g) = ternopt_core::identities::c2_polys();
    let big = c2_lhs(&f, &g, 9);
    let xn = ternopt_core::parse_poly("x^80-1").unwrap();
    c.bench_function("factor/x^80-1", |b| {
        b.iter(|| factor(black_box(&xn)).unwrap())
    });
    c.bench_function("factor/c2_case2_lhs", |b| {
        b.iter(|| factor(black_box(&big)).unwrap())
    });
}

criterion_group!(
    benches,
    field_mul,
    condition_scans,
    weight_search,
    factorization
);
criterion_main!(benches);
