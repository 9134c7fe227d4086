use criterion::{criterion_group, criterion_main, Criterion};
use crsym::ambient::{dv, seeded_pairs, AmbientModel};
use crsym::classalg::{center_convolution, class_multiply, ClassElement, Partition};
use crsym::decompose::{commutant_mult_crosscheck, isotypic_rank, trace_free_symmetric_blocks};
use crsym::symbols::verify_prop1;
use std::hint::black_box;

fn classalg(c: &mut Criterion) {
    let a = ClassElement::basis(&Partition::new(vec![2, 1, 1, 1]));
    let b = ClassElement::basis(&Partition::new(vec![3, 2]));
    c.bench_function("class_multiply k=5", |bch| bch.iter(|| class_multiply(black_box(&a), black_box(&b)).unwrap()));
    c.bench_function("center_convolution k=5", |bch| {
        bch.iter(|| center_convolution(black_box(&a), black_box(&b)).unwrap())
    });
}

fn ambient(c: &mut Criterion) {
    let m = AmbientModel::standard(2);
    let (v, w) = seeded_pairs(4, 1, 1).remove(0);
    c.bench_function("dv compose n=2", |bch| {
        bch.iter(|| dv(&m, black_box(&v)).unwrap().compose(&dv(&m, black_box(&w)).unwrap()))
    });
}

fn decompose(c: &mut Criterion) {
    let mut g = c.benchmark_group("decompose");
    g.sample_size(10);
    g.bench_function("S^3_0 sl(6) blocks", |bch| bch.iter(|| trace_free_symmetric_blocks(3, black_box(6)).unwrap()));
    g.bench_function("isotypic rank (2,1) N=6", |bch| {
        bch.iter(|| isotypic_rank(&Partition::new(vec![2, 1]), 3, black_box(6)).unwrap())
    });
    g.bench_function("commutant cross-check (3,6)", |bch| bch.iter(|| commutant_mult_crosscheck(3, black_box(6)).unwrap()));
    g.finish();
}

fn symbols(c: &mut Criterion) {
    c.bench_function("prop1 (4,2) n=3", |bch| bch.iter(|| verify_prop1(3, black_box(4), 2).unwrap()));
}

criterion_group!(benches, classalg, ambient, decompose, symbols);
criterion_main!(benches);
