use std::fmt;
use std::io::Write;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{DistanceMatrix, EvalError};
use crate::chem::LabeledDataset;

/// Cross-validated RMSE of a k-NN regressor next to that of a predictor
/// returning the training-fold mean.
#[derive(Debug, Clone, PartialEq)]
pub struct CvReport {
    pub k: usize,
    pub seed: u64,
    /// Test fold of every record.
    pub assignment: Vec<usize>,
    pub fold_sizes: Vec<usize>,
    pub fold_rmse: Vec<f64>,
    pub mean_rmse: f64,
    pub std_rmse: f64,
    pub baseline_fold_rmse: Vec<f64>,
    pub baseline_mean_rmse: f64,
    pub baseline_std_rmse: f64,
}

impl CvReport {
    pub fn folds(&self) -> usize {
        self.fold_sizes.len()
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<(), EvalError> {
        let mut out = csv::Writer::from_writer(writer);
        out.write_record(["fold", "size", "rmse", "mean_predictor_rmse"])?;
        for f in 0..self.folds() {
            out.write_record([
                f.to_string(),
                self.fold_sizes[f].to_string(),
                self.fold_rmse[f].to_string(),
                self.baseline_fold_rmse[f].to_string(),
            ])?;
        }
        out.write_record([
            "mean".to_string(),
            String::new(),
            self.mean_rmse.to_string(),
            self.baseline_mean_rmse.to_string(),
        ])?;
        out.write_record([
            "std".to_string(),
            String::new(),
            self.std_rmse.to_string(),
            self.baseline_std_rmse.to_string(),
        ])?;
        out.flush()?;
        Ok(())
    }
}

impl fmt::Display for CvReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}-NN over {} folds (seed {}): RMSE {:.4} ± {:.4}; mean predictor {:.4} ± {:.4}",
            self.k,
            self.folds(),
            self.seed,
            self.mean_rmse,
            self.std_rmse,
            self.baseline_mean_rmse,
            self.baseline_std_rmse
        )
    }
}

/// k-NN regression under seeded `folds`-fold cross-validation.
///
/// Records are shuffled with `seed` and split into contiguous folds whose
/// sizes differ by at most one. Each test record is predicted by the mean
/// target of its `k` nearest training records; equal distances are broken
/// by dataset index. A failed matrix entry that would be read is an error.
pub fn knn_crossval(
    ds: &LabeledDataset,
    d: &DistanceMatrix,
    k: usize,
    folds: usize,
    seed: u64,
) -> Result<CvReport, EvalError> {
    let n = ds.len();
    if d.len() != n {
        return Err(EvalError::ShapeMismatch {
            matrix: d.len(),
            dataset: n,
        });
    }
    if folds == 0 || folds > n {
        return Err(EvalError::InvalidFolds { folds, records: n });
    }
    let largest_fold = n.div_ceil(folds);
    if k == 0 || k > n - largest_fold {
        return Err(EvalError::InvalidK {
            k,
            train: n - largest_fold,
        });
    }
    let targets = ds.targets();

    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let fold_sizes: Vec<usize> = (0..folds)
        .map(|f| n / folds + usize::from(f < n % folds))
        .collect();
    let mut assignment = vec![0; n];
    let mut start = 0;
    for (f, &size) in fold_sizes.iter().enumerate() {
        for &r in &order[start..start + size] {
            assignment[r] = f;
        }
        start += size;
    }

    let mut fold_rmse = Vec::with_capacity(folds);
    let mut baseline_fold_rmse = Vec::with_capacity(folds);
    for f in 0..folds {
        let train: Vec<usize> = (0..n).filter(|&r| assignment[r] != f).collect();
        let train_mean = train.iter().map(|&r| targets[r]).sum::<f64>() / train.len() as f64;
        let (mut se, mut baseline_se, mut count) = (0.0, 0.0, 0usize);
        for t in (0..n).filter(|&r| assignment[r] == f) {
            let mut neighbours = train
                .iter()
                .map(|&r| {
                    d.get(t, r)
                        .map(|dist| (dist, r))
                        .ok_or(EvalError::PoisonedPair {
                            i: t.min(r),
                            j: t.max(r),
                        })
                })
                .collect::<Result<Vec<_>, _>>()?;
            neighbours.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            let prediction = neighbours[..k]
                .iter()
                .map(|&(_, r)| targets[r])
                .sum::<f64>()
                / k as f64;
            se += (prediction - targets[t]).powi(2);
            baseline_se += (train_mean - targets[t]).powi(2);
            count += 1;
        }
        fold_rmse.push((se / count as f64).sqrt());
        baseline_fold_rmse.push((baseline_se / count as f64).sqrt());
    }
    let (mean_rmse, std_rmse) = mean_std(&fold_rmse);
    let (baseline_mean_rmse, baseline_std_rmse) = mean_std(&baseline_fold_rmse);
    Ok(CvReport {
        k,
        seed,
        assignment,
        fold_sizes,
        fold_rmse,
        mean_rmse,
        std_rmse,
        baseline_fold_rmse,
        baseline_mean_rmse,
        baseline_std_rmse,
    })
}

/// Mean and population standard deviation.
fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}
