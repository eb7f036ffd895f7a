//! Per-environment records, per-run results and cross-run aggregation.

use crate::error::{Error, Result};

/// State of one environment at the moment it ended.
#[derive(Debug, Clone, PartialEq)]
pub struct ChangeRecord {
    pub environment_index: usize,
    /// Best fitness of any evaluation made during the environment.
    pub best_found: f64,
    /// Global optimum of the environment.
    pub optimum: f64,
    pub peaks_found: usize,
    /// Clusters created by clustering during the environment.
    pub clusters_generated: usize,
    /// Live clusters plus clusters archived as converged.
    pub survived_clusters: usize,
    pub evaluations_used: u64,
}

impl ChangeRecord {
    pub fn error(&self) -> f64 {
        self.optimum - self.best_found
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub seed: u64,
    pub records: Vec<ChangeRecord>,
    pub offline_error: f64,
    /// Changes that change detection had not noticed one iteration after
    /// they happened.
    pub detection_misses: usize,
}

impl RunResult {
    pub fn mean_peaks_found(&self) -> f64 {
        mean(self.records.iter().map(|r| r.peaks_found as f64))
    }

    pub fn mean_clusters_generated(&self) -> f64 {
        mean(self.records.iter().map(|r| r.clusters_generated as f64))
    }

    pub fn mean_survived_clusters(&self) -> f64 {
        mean(self.records.iter().map(|r| r.survived_clusters as f64))
    }
}

fn mean(values: impl Iterator<Item = f64>) -> f64 {
    let (sum, n) = values.fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    if n == 0 {
        0.0
    } else {
        sum / n as f64
    }
}

/// Mean gap between each environment's optimum and the best value found.
pub fn offline_error(records: &[ChangeRecord]) -> Result<f64> {
    if records.is_empty() {
        return Err(Error::contract("offline error of an empty record list"));
    }
    Ok(mean(records.iter().map(ChangeRecord::error)))
}

/// Cross-run statistics. `offline_error_std` is the sample standard
/// deviation (0 for a single run).
#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub runs: usize,
    pub offline_error_mean: f64,
    pub offline_error_std: f64,
    pub peaks_found_mean: f64,
    pub clusters_generated_mean: f64,
    pub survived_clusters_mean: f64,
}

pub fn aggregate(results: &[RunResult]) -> Result<Summary> {
    if results.is_empty() {
        return Err(Error::contract("cannot aggregate zero runs"));
    }
    let n = results.len();
    let error_mean = mean(results.iter().map(|r| r.offline_error));
    let std = if n > 1 {
        let ss: f64 = results.iter().map(|r| (r.offline_error - error_mean).powi(2)).sum();
        (ss / (n - 1) as f64).sqrt()
    } else {
        0.0
    };
    Ok(Summary {
        runs: n,
        offline_error_mean: error_mean,
        offline_error_std: std,
        peaks_found_mean: mean(results.iter().map(RunResult::mean_peaks_found)),
        clusters_generated_mean: mean(results.iter().map(RunResult::mean_clusters_generated)),
        survived_clusters_mean: mean(results.iter().map(RunResult::mean_survived_clusters)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(h: f64, f: f64) -> ChangeRecord {
        ChangeRecord {
            environment_index: 0,
            best_found: h,
            optimum: f,
            peaks_found: 0,
            clusters_generated: 0,
            survived_clusters: 0,
            evaluations_used: 0,
        }
    }

    fn run(err: f64) -> RunResult {
        RunResult { seed: 0, records: vec![record(50.0 - err, 50.0)], offline_error: err, detection_misses: 0 }
    }

    #[test]
    fn offline_error_arithmetic() {
        assert_eq!(offline_error(&[record(50.0, 50.0), record(61.0, 61.0)]).unwrap(), 0.0);
        assert_eq!(offline_error(&[record(48.0, 50.0), record(49.5, 50.0)]).unwrap(), 1.25);
        assert_eq!(offline_error(&[record(49.0, 50.0)]).unwrap(), 1.0);
        assert!(matches!(offline_error(&[]), Err(Error::Contract(_))));
    }

    #[test]
    fn aggregate_statistics() {
        let one = aggregate(&[run(1.5)]).unwrap();
        assert_eq!(one.offline_error_mean, 1.5);
        assert_eq!(one.offline_error_std, 0.0);
        let two = aggregate(&[run(1.0), run(3.0)]).unwrap();
        assert_eq!(two.offline_error_mean, 2.0);
        assert!((two.offline_error_std - 2f64.sqrt()).abs() < 1e-12);
        assert!(aggregate(&[]).is_err());
    }
}
