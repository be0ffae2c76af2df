use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use hankel_core::hankel::{hankel_at, hankel_image};
use hankel_core::kfinite::gram;
use hankel_core::representation::{act_kirillov, GroupElement};
use hankel_core::special::bessel_j;
use hankel_core::{parse_spec, ComplexOrder, KirillovSign};
use num_complex::Complex64;

fn bessel(c: &mut Criterion) {
    let nu = ComplexOrder::new(Complex64::new(0.7, 0.3)).unwrap();
    c.bench_function("bessel_j small x", |b| b.iter(|| bessel_j(nu, black_box(3.5)).unwrap()));
    c.bench_function("bessel_j large x", |b| b.iter(|| bessel_j(nu, black_box(85.0)).unwrap()));
}

fn transforms(c: &mut Criterion) {
    let nu = ComplexOrder::real(2.0).unwrap();
    let f = parse_spec("(1,0.5)*x^1*exp(-1.2x) + exp(-0.8x)*osc(0.4x)", nu).unwrap();
    c.bench_function("hankel_at quadrature", |b| b.iter(|| hankel_at(&f, black_box(2.5), 1e-10).unwrap()));
    let image = hankel_image(&f);
    c.bench_function("hankel_image evaluate", |b| b.iter(|| image.evaluate(black_box(2.5)).unwrap()));
}

fn representation(c: &mut Criterion) {
    c.bench_function("gram d=3 n=10", |b| b.iter(|| gram(black_box(3), 10).unwrap()));
    let f = parse_spec("x^2*exp(-x)", ComplexOrder::weight(3)).unwrap();
    let g = GroupElement::n(0.4) * GroupElement::s(1.3).unwrap() * GroupElement::rotation(0.9);
    c.bench_function("kirillov action", |b| b.iter(|| act_kirillov(black_box(&g), &f, KirillovSign::Plus).unwrap()));
}

criterion_group!(benches, bessel, transforms, representation);
criterion_main!(benches);
