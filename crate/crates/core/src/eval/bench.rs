use std::collections::BTreeMap;
use std::io::Write;

use super::{pairwise_distances, DistanceMatrix, EvalError, PairwiseConfig};
use crate::chem::LabeledDataset;
use crate::cost::CostFunction;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkRow {
    pub i: usize,
    pub j: usize,
    pub m: usize,
    pub n: usize,
    pub mn: usize,
    pub micros: f64,
    pub polls: u64,
}

/// `ln(time) = slope * ln(m*n) + intercept`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogLogFit {
    pub slope: f64,
    pub intercept: f64,
    pub points: usize,
}

impl LogLogFit {
    pub fn predict(&self, x: f64) -> f64 {
        (self.intercept + self.slope * x.ln()).exp()
    }
}

/// Quartiles of one log2-spaced bucket `[lo, hi)` of m*n values.
#[derive(Debug, Clone, PartialEq)]
pub struct PercentileBand {
    pub lo: usize,
    pub hi: usize,
    pub count: usize,
    pub micros_p25: f64,
    pub micros_p75: f64,
    pub polls_p25: f64,
    pub polls_p75: f64,
}

impl PercentileBand {
    /// Geometric center of the bucket.
    pub fn x(&self) -> f64 {
        ((self.lo as f64) * (self.hi as f64)).sqrt()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkSummary {
    pub label: String,
    pub config: PairwiseConfig,
    /// Successful pairs only.
    pub rows: Vec<BenchmarkRow>,
    pub failures: usize,
    pub mean_micros: f64,
    pub mean_polls: f64,
    /// Absent when fewer than 3 distinct m*n values are available.
    pub fit: Option<LogLogFit>,
    pub bands: Vec<PercentileBand>,
}

/// Computes one matrix per configuration and summarizes it.
pub fn benchmark(
    ds: &LabeledDataset,
    configs: &[(PairwiseConfig, &dyn CostFunction)],
) -> Vec<BenchmarkSummary> {
    configs
        .iter()
        .map(|(config, c)| BenchmarkSummary::from_matrix(&pairwise_distances(ds, *c, config)))
        .collect()
}

impl BenchmarkSummary {
    pub fn from_matrix(matrix: &DistanceMatrix) -> Self {
        let rows: Vec<BenchmarkRow> = matrix
            .pairs
            .iter()
            .filter(|p| p.distance.is_some())
            .map(|p| BenchmarkRow {
                i: p.i,
                j: p.j,
                m: p.m,
                n: p.n,
                mn: p.m * p.n,
                micros: p.micros,
                polls: p.polls,
            })
            .collect();
        let count = rows.len().max(1) as f64;
        let mean_micros = rows.iter().map(|r| r.micros).sum::<f64>() / count;
        let mean_polls = rows.iter().map(|r| r.polls as f64).sum::<f64>() / count;
        let points: Vec<(f64, f64)> = rows.iter().map(|r| (r.mn as f64, r.micros)).collect();
        let fit = match fit_loglog(&points) {
            Ok(fit) => Some(fit),
            Err(e) => {
                log::info!("{}: no regression ({e})", matrix.config.label());
                None
            }
        };
        BenchmarkSummary {
            label: matrix.config.label(),
            config: matrix.config.clone(),
            bands: bands(&rows),
            rows,
            failures: matrix.failure_count(),
            mean_micros,
            mean_polls,
            fit,
        }
    }

    /// One-row CSV with the aggregate numbers.
    pub fn write_summary_csv<W: Write>(&self, writer: W) -> Result<(), EvalError> {
        let mut out = csv::Writer::from_writer(writer);
        out.write_record([
            "config",
            "algorithm",
            "heuristic",
            "costs",
            "pairs",
            "failures",
            "mean_micros",
            "mean_polls",
            "slope",
            "intercept",
        ])?;
        let fit = |f: fn(&LogLogFit) -> f64| {
            self.fit
                .as_ref()
                .map(|x| f(x).to_string())
                .unwrap_or_default()
        };
        out.write_record([
            self.label.clone(),
            self.config.algorithm.to_string(),
            self.config.heuristic.to_string(),
            self.config.cost_scheme.clone(),
            self.rows.len().to_string(),
            self.failures.to_string(),
            format!("{:.3}", self.mean_micros),
            self.mean_polls.to_string(),
            fit(|f| f.slope),
            fit(|f| f.intercept),
        ])?;
        out.flush()?;
        Ok(())
    }

    /// Per-pair rows: `pair_i, pair_j, m, n, mn, micros, polls`.
    pub fn write_rows_csv<W: Write>(&self, writer: W) -> Result<(), EvalError> {
        let mut out = csv::Writer::from_writer(writer);
        out.write_record(["pair_i", "pair_j", "m", "n", "mn", "micros", "polls"])?;
        for r in &self.rows {
            out.write_record([
                r.i.to_string(),
                r.j.to_string(),
                r.m.to_string(),
                r.n.to_string(),
                r.mn.to_string(),
                format!("{:.3}", r.micros),
                r.polls.to_string(),
            ])?;
        }
        out.flush()?;
        Ok(())
    }

    /// Plot data: one row per bucket with the fitted line and quartile bands.
    pub fn write_plot_csv<W: Write>(&self, writer: W) -> Result<(), EvalError> {
        let mut out = csv::Writer::from_writer(writer);
        out.write_record([
            "x",
            "fit_micros",
            "micros_p25",
            "micros_p75",
            "polls_p25",
            "polls_p75",
            "count",
        ])?;
        for b in &self.bands {
            let x = b.x();
            out.write_record([
                format!("{x:.3}"),
                self.fit
                    .map(|f| format!("{:.3}", f.predict(x)))
                    .unwrap_or_default(),
                format!("{:.3}", b.micros_p25),
                format!("{:.3}", b.micros_p75),
                b.polls_p25.to_string(),
                b.polls_p75.to_string(),
                b.count.to_string(),
            ])?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Least squares fit of `ln y` against `ln x` over points with finite,
/// positive coordinates.
pub fn fit_loglog(points: &[(f64, f64)]) -> Result<LogLogFit, EvalError> {
    let logs: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| x.is_finite() && y.is_finite() && *x > 0.0 && *y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    let mut xs: Vec<f64> = logs.iter().map(|p| p.0).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    if xs.len() < 3 {
        return Err(EvalError::InsufficientData { distinct: xs.len() });
    }
    let k = logs.len() as f64;
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = logs.iter().map(|(x, y)| (x - mean_x) * (y - mean_y)).sum();
    let sxx: f64 = logs.iter().map(|(x, _)| (x - mean_x).powi(2)).sum();
    let slope = sxy / sxx;
    Ok(LogLogFit {
        slope,
        intercept: mean_y - slope * mean_x,
        points: logs.len(),
    })
}

/// Percentile `q` in `[0, 1]` with linear interpolation between order
/// statistics. NaN for empty input.
pub fn percentile(values: &[f64], q: f64) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let rank = q.clamp(0.0, 1.0) * (sorted.len() - 1) as f64;
    let (lo, hi) = (rank.floor() as usize, rank.ceil() as usize);
    sorted[lo] + (sorted[hi] - sorted[lo]) * (rank - lo as f64)
}

fn bands(rows: &[BenchmarkRow]) -> Vec<PercentileBand> {
    let mut buckets: BTreeMap<u32, Vec<&BenchmarkRow>> = BTreeMap::new();
    for r in rows {
        buckets.entry(r.mn.max(1).ilog2()).or_default().push(r);
    }
    buckets
        .into_iter()
        .map(|(k, members)| {
            let micros: Vec<f64> = members.iter().map(|r| r.micros).collect();
            let polls: Vec<f64> = members.iter().map(|r| r.polls as f64).collect();
            PercentileBand {
                lo: 1 << k,
                hi: 1 << (k + 1),
                count: members.len(),
                micros_p25: percentile(&micros, 0.25),
                micros_p75: percentile(&micros, 0.75),
                polls_p25: percentile(&polls, 0.25),
                polls_p75: percentile(&polls, 0.75),
            }
        })
        .collect()
}
