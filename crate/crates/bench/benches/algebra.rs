use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pelem_core::cyclotomic::{cyclotomic_poly, verify_lemma_range};
use pelem_core::intlinalg::{char_poly, smith_normal_form};
use pelem_core::random::random_finite_order;
use pelem_core::torus_rank::{fixed_point_rank, sharp_construction};
use pelem_core::weyl_audit::audit_pgl4;
use pelem_core::PrimeModulus;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;

fn cyclotomic(c: &mut Criterion) {
    let mut g = c.benchmark_group("cyclotomic_poly");
    for n in [105u64, 2310, 30030, 720720] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| cyclotomic_poly(black_box(n)).unwrap())
        });
    }
    g.finish();
}

fn lemma(c: &mut Criterion) {
    let primes: Vec<_> = [2, 3, 5, 7, 11]
        .map(|p| PrimeModulus::new(p).unwrap())
        .to_vec();
    c.bench_function("lemma_sweep_n60", |b| {
        b.iter(|| verify_lemma_range(black_box(60), &primes).unwrap())
    });
}

fn linalg(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut g = c.benchmark_group("linalg");
    for d in [4usize, 8, 12] {
        let m = random_finite_order(d, &mut rng).unwrap();
        g.bench_with_input(BenchmarkId::new("char_poly", d), &m, |b, m| {
            b.iter(|| char_poly(m).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("smith_normal_form", d), &m, |b, m| {
            b.iter(|| smith_normal_form(m).unwrap())
        });
    }
    g.finish();
}

fn rank(c: &mut Criterion) {
    let pres = sharp_construction(12, 6).unwrap();
    let p = PrimeModulus::new(7).unwrap();
    c.bench_function("fixed_point_rank_d12_t6", |b| {
        b.iter(|| fixed_point_rank(&pres, p).unwrap())
    });
    c.bench_function("weyl_audit", |b| {
        b.iter(|| audit_pgl4(PrimeModulus::new(3).unwrap()).unwrap())
    });
}

criterion_group!(benches, cyclotomic, lemma, linalg, rank);
criterion_main!(benches);
