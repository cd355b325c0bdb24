use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use qinv_core::group::{self, Which};
use qinv_core::invariants;

fn polynomials(c: &mut Criterion) {
    c.bench_function("gamma_via_newton", |b| b.iter(invariants::gamma_via_newton));
    c.bench_function("delta_squared", |b| b.iter(|| invariants::delta().pow(2)));
    c.bench_function("jacobian_f", |b| b.iter(invariants::jacobian_f));
    let tau = group::tau();
    let gamma = invariants::gamma();
    c.bench_function("gamma_subst_tau", |b| b.iter(|| black_box(gamma).subst_linear(tau.matrix())));
}

fn groups(c: &mut Criterion) {
    c.bench_function("closure_w_tilde", |b| b.iter(|| Which::WTilde.closure().unwrap()));
    let wt = Which::WTilde.closure().unwrap();
    let f6 = invariants::f(6).unwrap();
    c.bench_function("f6_invariant_w_tilde", |b| b.iter(|| wt.is_invariant(black_box(&f6))));
    let w = Which::W.closure().unwrap();
    c.bench_function("delta_equivariance_w", |b| b.iter(|| group::check_delta_equivariance(black_box(&w))));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = polynomials, groups
}
criterion_main!(benches);
