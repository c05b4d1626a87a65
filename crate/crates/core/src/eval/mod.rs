//! Evaluation harness: pairwise distance matrices, search-effort
//! benchmarks with log-log regression, and k-NN cross-validation.

mod bench;
mod knn;
pub mod synth;

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::astar::{astar_uted_forest_entry, astar_uted_with, SearchError, SearchOptions};
use crate::baselines::{cuted_constrained, oracle_distance, oracle_distance_rooted, ted_ordered};
use crate::chem::LabeledDataset;
use crate::cost::CostFunction;
use crate::heuristics::HeuristicKind;
use crate::mapping::MappingClass;
use crate::tree::Tree;

pub use bench::{
    benchmark, fit_loglog, percentile, BenchmarkRow, BenchmarkSummary, LogLogFit, PercentileBand,
};
pub use knn::{knn_crossval, CvReport};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("{folds} folds requested for {records} records")]
    InvalidFolds { folds: usize, records: usize },
    #[error("k = {k} but the smallest training set has {train} records")]
    InvalidK { k: usize, train: usize },
    #[error("distance between records {i} and {j} is missing (pair failed)")]
    PoisonedPair { i: usize, j: usize },
    #[error("distance matrix covers {matrix} records but the dataset has {dataset}")]
    ShapeMismatch { matrix: usize, dataset: usize },
    #[error("regression needs at least 3 distinct m*n values, got {distinct}")]
    InsufficientData { distinct: usize },
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// Distance used to fill a matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Algorithm {
    /// Unordered edit distance by A* search.
    #[default]
    Uted,
    /// Constrained unordered edit distance.
    Cuted,
    /// Ordered edit distance.
    Ted,
    /// Exhaustive unordered search; small trees only.
    Oracle,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Uted,
        Algorithm::Cuted,
        Algorithm::Ted,
        Algorithm::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Uted => "uted",
            Algorithm::Cuted => "cuted",
            Algorithm::Ted => "ted",
            Algorithm::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm {s:?} (expected uted, cuted, ted or oracle)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Budgets {
    pub max_polls: Option<u64>,
    pub max_time: Option<Duration>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairwiseConfig {
    pub algorithm: Algorithm,
    pub heuristic: HeuristicKind,
    /// Name of the cost function, kept as metadata.
    pub cost_scheme: String,
    /// Worker threads; 0 uses all cores.
    pub workers: usize,
    pub budgets: Budgets,
    /// Require root-to-root substitution (A* and oracle only).
    pub forced_roots: bool,
}

impl PairwiseConfig {
    pub fn new(
        algorithm: Algorithm,
        heuristic: HeuristicKind,
        cost_scheme: impl Into<String>,
    ) -> Self {
        PairwiseConfig {
            algorithm,
            heuristic,
            cost_scheme: cost_scheme.into(),
            workers: 0,
            budgets: Budgets::default(),
            forced_roots: false,
        }
    }

    /// Short name such as `uted-h2-unit`.
    pub fn label(&self) -> String {
        match self.algorithm {
            Algorithm::Uted => {
                format!("{}-{}-{}", self.algorithm, self.heuristic, self.cost_scheme)
            }
            _ => format!("{}-{}", self.algorithm, self.cost_scheme),
        }
    }
}

/// Outcome of one unordered pair `i < j`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairStat {
    pub i: usize,
    pub j: usize,
    pub m: usize,
    pub n: usize,
    pub distance: Option<f64>,
    pub polls: u64,
    pub micros: f64,
    pub failure: Option<String>,
}

/// Symmetric matrix of pairwise distances with per-pair statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    pub ids: Vec<String>,
    pub config: PairwiseConfig,
    /// One entry per pair `i < j`, in row-major order.
    pub pairs: Vec<PairStat>,
    distances: Vec<f64>,
}

impl DistanceMatrix {
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Distance between records `i` and `j`; `None` if that pair failed.
    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        let d = self.distances[i * self.len() + j];
        (!d.is_nan()).then_some(d)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PairStat> {
        self.pairs.iter().filter(|p| p.failure.is_some())
    }

    pub fn failure_count(&self) -> usize {
        self.failures().count()
    }

    /// Square matrix with failed entries as NaN.
    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.distances
            .chunks(self.len())
            .map(<[f64]>::to_vec)
            .collect()
    }

    /// Matrix CSV: a header of record ids, then one row per record. Failed
    /// entries are left empty.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<(), EvalError> {
        let mut out = csv::Writer::from_writer(writer);
        out.write_record(std::iter::once("id").chain(self.ids.iter().map(String::as_str)))?;
        for (i, id) in self.ids.iter().enumerate() {
            let cells =
                (0..self.len()).map(|j| self.get(i, j).map(|d| d.to_string()).unwrap_or_default());
            out.write_record(std::iter::once(id.clone()).chain(cells))?;
        }
        out.flush()?;
        Ok(())
    }

    /// Per-pair statistics CSV.
    pub fn write_stats_csv<W: Write>(&self, writer: W) -> Result<(), EvalError> {
        let mut out = csv::Writer::from_writer(writer);
        out.write_record([
            "pair_i", "pair_j", "m", "n", "distance", "polls", "micros", "failure",
        ])?;
        for p in &self.pairs {
            out.write_record([
                p.i.to_string(),
                p.j.to_string(),
                p.m.to_string(),
                p.n.to_string(),
                p.distance.map(|d| d.to_string()).unwrap_or_default(),
                p.polls.to_string(),
                format!("{:.3}", p.micros),
                p.failure.clone().unwrap_or_default(),
            ])?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Computes all `N(N-1)/2` distances of a dataset on a worker pool.
/// Failed pairs (budget, cost or size errors) are recorded, not filled.
pub fn pairwise_distances(
    ds: &LabeledDataset,
    c: &dyn CostFunction,
    config: &PairwiseConfig,
) -> DistanceMatrix {
    let trees: Vec<&Tree> = ds.trees().collect();
    let ids = ds.records.iter().map(|r| r.id.clone()).collect();
    pairwise_trees(&trees, ids, c, config)
}

pub fn pairwise_trees(
    trees: &[&Tree],
    ids: Vec<String>,
    c: &dyn CostFunction,
    config: &PairwiseConfig,
) -> DistanceMatrix {
    let n = trees.len();
    let jobs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let run = || {
        jobs.par_iter()
            .map(|&(i, j)| compute_pair(i, j, trees[i], trees[j], c, config))
            .collect::<Vec<_>>()
    };
    let pairs = if config.workers == 0 {
        run()
    } else {
        match rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build()
        {
            Ok(pool) => pool.install(run),
            Err(e) => {
                log::warn!(
                    "could not build a pool of {} workers ({e}); using the global pool",
                    config.workers
                );
                run()
            }
        }
    };
    let mut distances = vec![0.0; n * n];
    for p in &pairs {
        let d = p.distance.unwrap_or(f64::NAN);
        distances[p.i * n + p.j] = d;
        distances[p.j * n + p.i] = d;
    }
    DistanceMatrix {
        ids,
        config: config.clone(),
        pairs,
        distances,
    }
}

fn compute_pair(
    i: usize,
    j: usize,
    x: &Tree,
    y: &Tree,
    c: &dyn CostFunction,
    config: &PairwiseConfig,
) -> PairStat {
    let options = SearchOptions {
        heuristic: config.heuristic,
        max_polls: config.budgets.max_polls,
        max_time: config.budgets.max_time,
    };
    let start = Instant::now();
    let outcome: Result<(f64, u64), String> = match config.algorithm {
        Algorithm::Uted => {
            let result = if config.forced_roots {
                astar_uted_with(x, y, c, &options)
            } else {
                astar_uted_forest_entry(x, y, c, &options)
            };
            match result {
                Ok(r) => Ok((r.distance, r.stats.polls)),
                Err(SearchError::BudgetExhausted { lower_bound, stats }) => Err(format!(
                    "budget exhausted after {} polls (lower bound {lower_bound})",
                    stats.polls
                )),
                Err(e) => Err(e.to_string()),
            }
        }
        Algorithm::Cuted => cuted_constrained(x, y, c)
            .map(|d| (d, 0))
            .map_err(|e| e.to_string()),
        Algorithm::Ted => ted_ordered(x, y, c)
            .map(|d| (d, 0))
            .map_err(|e| e.to_string()),
        Algorithm::Oracle => {
            let d = if config.forced_roots {
                oracle_distance_rooted(x, y, c, MappingClass::Unordered)
            } else {
                oracle_distance(x, y, c, MappingClass::Unordered)
            };
            d.map(|d| (d, 0)).map_err(|e| e.to_string())
        }
    };
    let micros = start.elapsed().as_secs_f64() * 1e6;
    let (distance, polls, failure) = match outcome {
        Ok((d, polls)) => (Some(d), polls, None),
        Err(message) => {
            log::warn!("pair ({i}, {j}) failed: {message}");
            (None, 0, Some(message))
        }
    };
    PairStat {
        i,
        j,
        m: x.len(),
        n: y.len(),
        distance,
        polls,
        micros,
        failure,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chem::{LabelScheme, LabeledRecord};
    use crate::cost::unit_costs;
    use crate::tree::parse_tree;

    fn dataset(trees: &[&str]) -> LabeledDataset {
        let records = trees
            .iter()
            .enumerate()
            .map(|(k, t)| LabeledRecord {
                id: format!("r{k}"),
                tree: parse_tree(t).unwrap(),
                target: k as f64,
            })
            .collect();
        LabeledDataset::new(records, LabelScheme::Raw).unwrap()
    }

    #[test]
    fn reference_matrices() {
        let ds = dataset(&["a(b(c,d),e)", "a(e,d,c)"]);
        for (algorithm, d) in [
            (Algorithm::Uted, 1.0),
            (Algorithm::Ted, 3.0),
            (Algorithm::Cuted, 3.0),
            (Algorithm::Oracle, 1.0),
        ] {
            let m = pairwise_distances(
                &ds,
                &unit_costs(),
                &PairwiseConfig::new(algorithm, HeuristicKind::H2, "unit"),
            );
            assert_eq!(m.rows(), vec![vec![0.0, d], vec![d, 0.0]], "{algorithm}");
        }
    }

    #[test]
    fn trivial_matrices() {
        let one = pairwise_distances(
            &dataset(&["a(b)"]),
            &unit_costs(),
            &PairwiseConfig::new(Algorithm::Uted, HeuristicKind::H1, "unit"),
        );
        assert_eq!(one.rows(), vec![vec![0.0]]);
        assert!(one.pairs.is_empty());
        let same = pairwise_distances(
            &dataset(&["a(b,c)", "a(c,b)"]),
            &unit_costs(),
            &PairwiseConfig::new(Algorithm::Uted, HeuristicKind::H3, "unit"),
        );
        assert_eq!(same.get(0, 1), Some(0.0));
    }

    #[test]
    fn failures_are_recorded() {
        let ds = dataset(&["a(b(c,d),e)", "a(e,d,c)", "x(y,z,w,v,u,t,s,r,q)"]);
        let mut config = PairwiseConfig::new(Algorithm::Uted, HeuristicKind::Zero, "unit");
        config.budgets.max_polls = Some(2);
        let m = pairwise_distances(&ds, &unit_costs(), &config);
        assert!(m.failure_count() > 0);
        let failed = m.failures().next().unwrap();
        assert_eq!(m.get(failed.i, failed.j), None);
        assert_eq!(m.get(failed.j, failed.i), None);

        let oracle = pairwise_distances(
            &ds,
            &unit_costs(),
            &PairwiseConfig::new(Algorithm::Oracle, HeuristicKind::H2, "unit"),
        );
        assert_eq!(oracle.get(0, 1), Some(1.0));
        assert_eq!(oracle.get(0, 2), None);
    }

    #[test]
    fn csv_output() {
        let ds = dataset(&["a(b(c,d),e)", "a(e,d,c)"]);
        let m = pairwise_distances(
            &ds,
            &unit_costs(),
            &PairwiseConfig::new(Algorithm::Ted, HeuristicKind::H2, "unit"),
        );
        let mut out = Vec::new();
        m.write_csv(&mut out).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            "id,r0,r1\nr0,0,3\nr1,3,0\n"
        );
        let mut stats = Vec::new();
        m.write_stats_csv(&mut stats).unwrap();
        let stats = String::from_utf8(stats).unwrap();
        assert!(stats.starts_with("pair_i,pair_j,m,n,distance,polls,micros,failure\n0,1,5,4,3,0,"));
    }

    #[test]
    fn names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert!("zhang".parse::<Algorithm>().is_err());
    }
}
