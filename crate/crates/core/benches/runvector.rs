use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use runcorr::autocorr::aperiodic_direct;
use runcorr::runvector::{autocorr_fast, run_vector, run_vector_prefix_formula};
use runcorr::verify::random_sequence;

fn paths(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut group = c.benchmark_group("autocorrelation");
    for n in [256usize, 1024, 4096] {
        let a = random_sequence(&mut rng, n, n);
        let rle = a.to_rle();
        group.bench_with_input(BenchmarkId::new("direct", n), &a, |b, a| {
            b.iter(|| aperiodic_direct(a))
        });
        group.bench_with_input(BenchmarkId::new("runvector", n), &a, |b, a| {
            b.iter(|| autocorr_fast(a, true).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("runvector-only", n), &rle, |b, r| {
            b.iter(|| run_vector(r))
        });
        group.bench_with_input(BenchmarkId::new("prefix-formula", n), &rle, |b, r| {
            b.iter(|| run_vector_prefix_formula(r))
        });
    }
    group.finish();
}

criterion_group!(benches, paths);
criterion_main!(benches);
