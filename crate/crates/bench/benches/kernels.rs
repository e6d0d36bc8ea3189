use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nonunital_core::linalg::rref;
use nonunital_core::search::{extremal_pair, random_conjugator, random_matrix, run_suite, Rng, SuiteId, SuiteParams};
use nonunital_core::structure::{classify_gamma_max, jacobson_radical, recognize_parabolic};
use nonunital_core::{canonical, CanonicalTag, Field, Subalgebra, Subspace};

const Q: Field = Field::Rationals;

fn bench_rref(c: &mut Criterion) {
    let mut group = c.benchmark_group("rref");
    for n in [4usize, 8, 16] {
        let m = random_matrix(Q, n, 3, &mut Rng::new(n as u64));
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| rref(black_box(m))));
    }
    group.finish();
}

fn bench_closure(c: &mut Criterion) {
    let mut group = c.benchmark_group("closure");
    for n in [3usize, 4, 5] {
        let mut rng = Rng::new(7);
        let gens = [random_matrix(Q, n, 2, &mut rng), random_matrix(Q, n, 2, &mut rng)];
        let s = Subspace::span(Q, n, &gens).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &s, |b, s| b.iter(|| Subalgebra::closure(black_box(s))));
    }
    group.finish();
}

fn bench_structure(c: &mut Criterion) {
    let mut group = c.benchmark_group("structure");
    for n in [4usize, 5] {
        let g = random_conjugator(n, 3, &mut Rng::new(11));
        let p = canonical(CanonicalTag::ParabolicP, n).unwrap().conjugate_by(&g);
        group.bench_with_input(BenchmarkId::new("radical", n), &p, |b, p| b.iter(|| jacobson_radical(black_box(p))));
        group.bench_with_input(BenchmarkId::new("recognize_parabolic", n), &p, |b, p| {
            b.iter(|| recognize_parabolic(black_box(p)))
        });
        let (u, v) = extremal_pair(Q, n).unwrap();
        let w = u.intersect(&v).unwrap().conjugate_by(&g);
        group.bench_with_input(BenchmarkId::new("classify_gamma", n), &w, |b, w| {
            b.iter(|| classify_gamma_max(black_box(w)))
        });
    }
    group.finish();
}

fn bench_suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("suite");
    group.sample_size(10);
    for n in [3usize, 4] {
        let params = SuiteParams::new(n, 50, 42);
        group.bench_with_input(BenchmarkId::new("thm31", n), &params, |b, p| b.iter(|| run_suite(SuiteId::Thm31, p)));
    }
    group.finish();
}

criterion_group!(benches, bench_rref, bench_closure, bench_structure, bench_suite);
criterion_main!(benches);
