//! Benchmarks for the expensive stages: character tables, evaluation and
//! orbit decomposition, trace computation and the exact oracle.

use std::hint::black_box;

use criterion::{BenchmarkId, Criterion};
use fispec::character::mn_character;
use fispec::fixtures::{half_ordered_triples, kneser, subsets};
use fispec::spectra::{analyze, brute_force_spectrum, DegreeTraces, Operator, SpectrumOptions};
use fispec::{Caps, Partition};

pub fn characters(c: &mut Criterion) {
    let mut group = c.benchmark_group("character_table");
    for n in [6, 8, 10] {
        let parts = Partition::all(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &parts, |b, parts| {
            b.iter(|| {
                for mu in parts {
                    for rho in parts {
                        black_box(mn_character(mu, rho).unwrap());
                    }
                }
            })
        });
    }
    group.finish();
}

pub fn fisets(c: &mut Criterion) {
    let caps = Caps::default();
    let triples = subsets(3);
    c.bench_function("evaluate 3-subsets n=14", |b| {
        b.iter(|| black_box(triples.evaluate(14, &caps).unwrap().len()))
    });
    let half = half_ordered_triples();
    c.bench_function("decompose half-ordered triples", |b| {
        b.iter(|| black_box(half.decompose(10, 3, &caps).unwrap().is_certified()))
    });
}

pub fn spectra(c: &mut Criterion) {
    let caps = Caps::default();
    let mut group = c.benchmark_group("spectra");
    group.sample_size(10);
    for r in [2, 3] {
        let rel = kneser(r);
        group.bench_with_input(BenchmarkId::new("analyze kneser", r), &rel, |b, rel| {
            b.iter(|| black_box(analyze(rel, &SpectrumOptions::default(), &caps).unwrap().distinct_count))
        });
    }
    let rel = kneser(3);
    group.bench_function("class traces kneser r=3 n=10", |b| {
        b.iter(|| {
            black_box(
                DegreeTraces::compute(&rel, Operator::Adjacency, 10, 4, &caps)
                    .unwrap()
                    .size,
            )
        })
    });
    group.bench_function("brute force kneser r=3 n=12", |b| {
        b.iter(|| {
            black_box(
                brute_force_spectrum(&rel, Operator::Adjacency, 12, &caps)
                    .unwrap()
                    .distinct_eigenvalues(),
            )
        })
    });
    group.finish();
}
