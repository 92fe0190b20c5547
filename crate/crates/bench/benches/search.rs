use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use cyclic_sort::cosets::CosetIndex;
use cyclic_sort::schreier::{bfs, diameter_exact};
use cyclic_sort::{GeneratorSet, SearchConfig};

fn single_source(c: &mut Criterion) {
    let cfg = SearchConfig::default();
    let mut group = c.benchmark_group("bfs");
    group.sample_size(10);
    for n in [8, 9, 10] {
        for gens in [GeneratorSet::adjacent(n), GeneratorSet::cyclic(n)] {
            group.bench_function(BenchmarkId::new(gens.kind.to_string(), n), |b| {
                b.iter(|| bfs(&gens, CosetIndex(0), &cfg).unwrap().eccentricity())
            });
        }
    }
    group.finish();
}

fn all_sources(c: &mut Criterion) {
    let cfg = SearchConfig::default();
    let mut group = c.benchmark_group("diameter");
    group.sample_size(10);
    for n in [6, 7, 8] {
        let gens = GeneratorSet::adjacent(n);
        group.bench_function(BenchmarkId::from_parameter(n), |b| {
            b.iter(|| diameter_exact(&gens, &cfg).unwrap().diameter)
        });
    }
    group.finish();
}

criterion_group!(benches, single_source, all_sources);
criterion_main!(benches);
