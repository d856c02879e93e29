use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use linfield::{dickson, skew, DicksonMatrix, SkewPoly};
use linfield_bench::{corank_one_polys, random_polys, tower, TOWERS};

fn compose(c: &mut Criterion) {
    let mut group = c.benchmark_group("compose");
    for (label, p, e, n) in TOWERS {
        let t = tower(p, e, n);
        let polys = random_polys(&t, 2, 1);
        group.bench_function(BenchmarkId::from_parameter(label), |b| {
            b.iter(|| black_box(&polys[0]).compose(black_box(&polys[1])).unwrap())
        });
    }
    group.finish();
}

fn dickson_ops(c: &mut Criterion) {
    let mut group = c.benchmark_group("dickson");
    for (label, p, e, n) in TOWERS {
        let t = tower(p, e, n);
        let l = random_polys(&t, 1, 2).remove(0);
        let d = DicksonMatrix::from_poly(&l);
        group.bench_function(BenchmarkId::new("rank", label), |b| b.iter(|| black_box(&d).rank()));
        group.bench_function(BenchmarkId::new("determinant", label), |b| b.iter(|| black_box(&d).determinant()));
        group.bench_function(BenchmarkId::new("adjugate_poly", label), |b| {
            b.iter(|| dickson::adjugate_poly(black_box(&l)))
        });
    }
    group.finish();
}

fn skew_ops(c: &mut Criterion) {
    let mut group = c.benchmark_group("skew");
    for (label, p, e, n) in TOWERS {
        let t = tower(p, e, n);
        let l = random_polys(&t, 1, 3).remove(0);
        let f = SkewPoly::phi_inv(&l);
        let xn1 = SkewPoly::x_n_minus_one(&t);
        group.bench_function(BenchmarkId::new("rgcd", label), |b| b.iter(|| black_box(&f).rgcd(&xn1).unwrap()));
        let corank = corank_one_polys(&t, 1, 4).remove(0);
        group.bench_function(BenchmarkId::new("factor_chain", label), |b| {
            b.iter(|| skew::factor_chain(black_box(&corank)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, compose, dickson_ops, skew_ops);
criterion_main!(benches);
