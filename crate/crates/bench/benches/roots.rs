use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use factorpoly::enumeration::factor_counts;
use factorpoly::inequalities::all_checks;
use factorpoly::polynomials::{classify, find_roots, Tolerances};
use factorpoly::{DegreeBounds, UniPoly};
use factorpoly_bench::{as_poly, grid, ones, shifted_factorial};

fn root_finding(c: &mut Criterion) {
    let tol = Tolerances::default();
    let mut group = c.benchmark_group("find_roots");
    for d in [5, 10, 20] {
        let p = shifted_factorial(d);
        group.bench_with_input(BenchmarkId::new("shifted_factorial", d), &p, |b, p| {
            b.iter(|| find_roots(black_box(p), &tol).unwrap())
        });
    }
    let unit = UniPoly::new(ones(24));
    group.bench_function("cyclotomic_24", |b| b.iter(|| find_roots(black_box(&unit), &tol).unwrap()));
    let g = grid(4, 5);
    let counts = factor_counts(&g, &DegreeBounds::clamped(&g, 0, 2).unwrap()).unwrap();
    let p = as_poly(&counts);
    group.bench_function("grid4x5_factor_polynomial", |b| b.iter(|| classify(black_box(&p), &tol).unwrap()));
    group.finish();
}

fn inequalities(c: &mut Criterion) {
    let p = shifted_factorial(12);
    c.bench_function("all_checks_degree_12", |b| b.iter(|| all_checks(black_box(p.coeffs()), 4).unwrap()));
}

criterion_group!(benches, root_finding, inequalities);
criterion_main!(benches);
