use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use crsf_core::dedekind::{dedekind_fast, dedekind_rademacher};
use crsf_core::invariants::eta0;
use crsf_core::rrketa::{eta0_via_rrk, regularized_eta_difference_lcm};
use crsf_core::sweep::lens_sweep;
use crsf_core::{ConePoint, Rational, SeifertData};

fn dedekind(c: &mut Criterion) {
    let mut g = c.benchmark_group("dedekind");
    for alpha in [101u64, 10_007, 99_991] {
        let x = (alpha / 3) as i64;
        g.bench_with_input(BenchmarkId::new("sawtooth", alpha), &alpha, |b, &a| {
            b.iter(|| dedekind_rademacher(black_box(a), 1, black_box(x)).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("reciprocity", alpha), &alpha, |b, &a| {
            b.iter(|| dedekind_fast(black_box(x), black_box(a)).unwrap())
        });
    }
    g.finish();
}

fn eta0_routes(c: &mut Criterion) {
    let cones = vec![
        ConePoint::new(59, 7, 11).unwrap(),
        ConePoint::new(53, 2, 5).unwrap(),
        ConePoint::new(47, 3, 13).unwrap(),
        ConePoint::new(43, 6, 17).unwrap(),
    ];
    let data = SeifertData::from_genus(1, Rational::new(-7, 3), cones).unwrap();
    let mut g = c.benchmark_group("eta0");
    g.bench_function("closed_form", |b| b.iter(|| eta0(black_box(&data))));
    g.bench_function("rrk_per_point", |b| {
        b.iter(|| eta0_via_rrk(black_box(&data)))
    });
    let small = SeifertData::from_genus(
        0,
        Rational::new(-1, 5),
        vec![
            ConePoint::new(7, 2, 3).unwrap(),
            ConePoint::new(11, 4, 5).unwrap(),
        ],
    )
    .unwrap();
    g.bench_function("rrk_lcm_77", |b| {
        b.iter(|| regularized_eta_difference_lcm(black_box(&small)))
    });
    g.finish();
}

fn sweeps(c: &mut Criterion) {
    let mut g = c.benchmark_group("sweep");
    g.sample_size(10);
    g.bench_function("lens_pmax_50", |b| {
        b.iter(|| lens_sweep(black_box(50)).unwrap())
    });
    g.finish();
}

criterion_group!(benches, dedekind, eta0_routes, sweeps);
criterion_main!(benches);
