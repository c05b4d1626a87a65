use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use uted_bench::alkane_pairs;
use uted_core::{
    astar_uted_forest_entry, cuted_constrained, h1, h2, h3, numeric_diff_costs, ted_ordered,
    unit_costs, CostFunction, CostMatrix, HeuristicKind, SearchOptions,
};

fn heuristics(c: &mut Criterion) {
    let pairs = alkane_pairs(20, 10, 14, 1);
    let matrices: Vec<CostMatrix> = pairs
        .iter()
        .map(|(x, y)| CostMatrix::new(x, y, &numeric_diff_costs(0.0)).unwrap())
        .collect();
    let sets: Vec<(Vec<usize>, Vec<usize>)> = pairs
        .iter()
        .map(|(x, y)| ((2..=x.len()).collect(), (2..=y.len()).collect()))
        .collect();
    let mut group = c.benchmark_group("heuristic");
    for (name, h) in [
        ("h1", h1 as fn(&CostMatrix, &[usize], &[usize]) -> f64),
        ("h2", h2),
        ("h3", h3),
    ] {
        group.bench_function(name, |b| {
            b.iter(|| {
                matrices
                    .iter()
                    .zip(&sets)
                    .map(|(m, (i, j))| h(m, black_box(i), black_box(j)))
                    .sum::<f64>()
            })
        });
    }
    group.finish();
}

fn searches(c: &mut Criterion) {
    let pairs = alkane_pairs(10, 8, 11, 2);
    let unit = unit_costs();
    let numeric = numeric_diff_costs(0.0);
    let costs: [(&str, &dyn CostFunction); 2] = [("unit", &unit), ("numeric", &numeric)];
    let mut group = c.benchmark_group("uted");
    group.sample_size(10);
    for (cost_name, cost) in costs {
        for kind in [HeuristicKind::H1, HeuristicKind::H2, HeuristicKind::H3] {
            let options = SearchOptions::new(kind);
            group.bench_with_input(
                BenchmarkId::new(kind.name(), cost_name),
                &pairs,
                |b, pairs| {
                    b.iter(|| {
                        pairs
                            .iter()
                            .map(|(x, y)| {
                                astar_uted_forest_entry(x, y, cost, &options)
                                    .unwrap()
                                    .distance
                            })
                            .sum::<f64>()
                    })
                },
            );
        }
    }
    group.finish();
}

fn baselines(c: &mut Criterion) {
    let pairs = alkane_pairs(20, 10, 14, 3);
    let unit = unit_costs();
    let mut group = c.benchmark_group("baseline");
    group.bench_function("ted", |b| {
        b.iter(|| {
            pairs
                .iter()
                .map(|(x, y)| ted_ordered(x, y, &unit).unwrap())
                .sum::<f64>()
        })
    });
    group.bench_function("cuted", |b| {
        b.iter(|| {
            pairs
                .iter()
                .map(|(x, y)| cuted_constrained(x, y, &unit).unwrap())
                .sum::<f64>()
        })
    });
    group.finish();
}

criterion_group!(benches, heuristics, searches, baselines);
criterion_main!(benches);
