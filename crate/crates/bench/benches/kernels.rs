use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use psmac_core::fixedpoints::{e1_chain_geom, h_scalar, FixedPointVector};
use psmac_core::nonsym::{compute_e, dl_apply};
use psmac_core::pieri::{brute_force_expand, coefficient_a, enumerate_support, match_check};
use psmac_core::polyrep::{build_htilde, e1_chain};
use psmac_core::{FixedPointLabel, QTRational, SplitIndex};

fn rational(c: &mut Criterion) {
    let a = &QTRational::one_minus(1, 2) / &QTRational::one_minus(2, 3);
    let b = &QTRational::one_minus(1, 1) / &(&QTRational::t() - &QTRational::q());
    c.bench_function("qt add", |z| z.iter(|| black_box(&a + &b)));
    c.bench_function("qt mul", |z| z.iter(|| black_box(&a * &b)));
}

fn hecke(c: &mut Criterion) {
    let e = compute_e(&[2, 0, 1, 1]);
    c.bench_function("dl_apply on E(2,0,1,1)", |z| z.iter(|| dl_apply(2, black_box(&e)).unwrap()));
}

fn pieri(c: &mut Criterion) {
    let src = SplitIndex::natural(&[2, 1], &[0, 1]).unwrap();
    c.bench_function("closed A over support (2,1|0,1)", |z| {
        z.iter(|| {
            for (_, d) in enumerate_support(&src).unwrap() {
                black_box(coefficient_a(&d).unwrap());
            }
        })
    });
    let small = SplitIndex::natural(&[1], &[0, 1]).unwrap();
    let n = psmac_core::pieri::default_oracle_n(&small);
    let mut g = c.benchmark_group("oracle");
    g.sample_size(10);
    g.bench_function("brute force (1|0,1)", |z| z.iter(|| brute_force_expand(&small, n).unwrap()));
    g.finish();
    let target = enumerate_support(&src).unwrap()[0].0.clone();
    c.bench_function("match_check (2,1|0,1)", |z| z.iter(|| match_check(&src, &target).unwrap()));
}

fn chains(c: &mut Criterion) {
    let label = FixedPointLabel::parse("3,2,1", "t^2,q*t,q^2").unwrap();
    let v = FixedPointVector::basis(label.clone()).unwrap().scale(&h_scalar(&label.xi));
    c.bench_function("geometric e1 chain (3,2,1)", |z| z.iter(|| e1_chain_geom(black_box(&v)).unwrap()));
    let h = build_htilde(&SplitIndex::natural(&[1], &[0, 1]).unwrap(), 6).unwrap();
    let mut g = c.benchmark_group("polynomial");
    g.sample_size(10);
    g.bench_function("e1 chain on H~(1|0,1)", |z| z.iter(|| e1_chain(black_box(&h)).unwrap()));
    g.finish();
}

criterion_group!(benches, rational, hecke, pieri, chains);
criterion_main!(benches);
