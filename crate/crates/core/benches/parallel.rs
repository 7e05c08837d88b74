use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use runcorr::par::Parallelism;
use runcorr::runvector::run_vector;
use runcorr::search::{exhaustive_search, pruned_search, Objective, SearchSpec};
use runcorr::verify::exhaustive_identities;

const MODES: [(&str, Parallelism); 2] = [
    ("sequential", Parallelism::Sequential),
    ("parallel", Parallelism::Parallel),
];

fn identity_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("identity-sweep");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_function(BenchmarkId::new(name, 12), |b| {
            b.iter(|| exhaustive_identities(3, 12, run_vector, mode))
        });
    }
    group.finish();
}

fn search(c: &mut Criterion) {
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    for (name, mode) in MODES {
        let spec = SearchSpec::new(18, Objective::MinPsl).parallelism(mode);
        group.bench_function(BenchmarkId::new(format!("exhaustive-{name}"), 18), |b| {
            b.iter(|| exhaustive_search(&spec).unwrap())
        });
        group.bench_function(BenchmarkId::new(format!("pruned-{name}"), 18), |b| {
            b.iter(|| pruned_search(&spec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, identity_sweep, search);
criterion_main!(benches);
