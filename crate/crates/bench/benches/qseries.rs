use criterion::{criterion_group, criterion_main, Criterion};
use num_complex::Complex64;
use qfock_core::correlators::{
    corrected_onepoint, normal_ordered_npoint, theta_logderiv_form, Convention,
};
use qfock_core::numeric::{eval_correlator, suggested_arguments, CorrelatorFn, EvalConfig};
use qfock_core::partitions::{count_table, enumerate, PartitionKind};
use qfock_core::ring::{pochhammer_inf, Profile, Sign};
use std::hint::black_box;

fn bench_partitions(c: &mut Criterion) {
    c.bench_function("enumerate strict to weight 40", |b| {
        b.iter(|| enumerate(PartitionKind::Strict, black_box(40)).count())
    });
    c.bench_function("count table odd strict to 60", |b| {
        b.iter(|| count_table(PartitionKind::OddStrict, black_box(60)))
    });
}

fn bench_ring(c: &mut Criterion) {
    let p = Profile::q_only(60);
    c.bench_function("(-q;q)_inf to q^60", |b| {
        b.iter(|| pochhammer_inf(&p.key().with_q(1), Sign::Plus, 1, &p).unwrap())
    });
    let gf = pochhammer_inf(&p.key().with_q(1), Sign::Plus, 1, &p).unwrap();
    c.bench_function("series inverse, pure q, order 60", |b| {
        b.iter(|| gf.inverse().unwrap())
    });
}

fn bench_correlators(c: &mut Criterion) {
    let p = Profile::univariate(16, "t", 16);
    c.bench_function("normal-ordered :R: at order 16", |b| {
        b.iter(|| normal_ordered_npoint(PartitionKind::Strict, &p).unwrap())
    });
    c.bench_function("corrected R (minus) at order 16", |b| {
        b.iter(|| corrected_onepoint(PartitionKind::Strict, Convention::Minus, &p, false).unwrap())
    });
    c.bench_function("theta log-derivative route at order 16", |b| {
        b.iter(|| theta_logderiv_form(PartitionKind::Strict, &p).unwrap())
    });
}

fn bench_numeric(c: &mut Criterion) {
    let q = Complex64::new(0.2, 0.05);
    let ts = suggested_arguments(q, 2);
    let cfg = EvalConfig {
        weight_cutoff: 48,
        tail_tol: 1e-12,
        annulus_guard: 0.02,
    };
    c.bench_function("eval R two-point, L <= 48", |b| {
        b.iter(|| eval_correlator(CorrelatorFn::R, black_box(q), &ts, &cfg).unwrap())
    });
}

criterion_group!(
    benches,
    bench_partitions,
    bench_ring,
    bench_correlators,
    bench_numeric
);
criterion_main!(benches);
