//! Benchmarks for the operations the law checker leans on: enumerating
//! transformer tables, composing them, growing bounded session trees, and
//! one end-to-end law pass at the reduced configuration.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use duplex::laws::{c3, check_all_laws, trio, LawConfig};
use duplex::model::compose_tables;
use duplex::model::derived::StarModel;
use duplex_bench::{composable_pairs, hom_grid};

fn enumeration(c: &mut Criterion) {
    c.bench_function("enumerate/hom-grid-139", |b| {
        b.iter(|| black_box(hom_grid()))
    });
    let base = c3();
    c.bench_function("enumerate/star-trees-depth-3", |b| {
        b.iter(|| black_box(StarModel::new(&base, 3)))
    });
}

fn composition(c: &mut Criterion) {
    let grid = hom_grid();
    let pairs = composable_pairs(&grid);
    let id = format!("compose/all-pairs-{}", pairs.len());
    c.bench_function(&id, |b| {
        b.iter(|| {
            for &(i, j) in &pairs {
                black_box(compose_tables(&grid[i], &grid[j]).expect("pair composes"));
            }
        })
    });
}

fn law_pass(c: &mut Criterion) {
    let corpus = trio();
    let config = LawConfig::probe();
    let mut group = c.benchmark_group("laws");
    group.sample_size(10);
    group.bench_function("full-pass-reduced-config", |b| {
        b.iter(|| black_box(check_all_laws(&corpus, &config)))
    });
    group.finish();
}

criterion_group!(benches, enumeration, composition, law_pass);
criterion_main!(benches);
