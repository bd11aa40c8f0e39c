//! Deterministic Monte Carlo driver.
//!
//! Replication `r` always draws from stream `(master_seed, r)`, whatever
//! the thread schedule, and aggregation runs over the replication-ordered
//! results with compensated sums, so summaries are byte-identical across
//! runs and across worker counts.

use rayon::prelude::*;
use serde::Serialize;

use giantscope_core::RngSeed;

use crate::stats::{covariance, mean, Kahan};

/// Run `reps` independent replications in parallel; the result vector is
/// ordered by replication index.
pub fn par_replications<T, F>(reps: u64, master_seed: u64, job: F) -> Vec<T>
where
    T: Send,
    F: Fn(RngSeed) -> T + Sync,
{
    (0..reps)
        .into_par_iter()
        .map(|r| job(RngSeed::new(master_seed, r)))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct StatSummary {
    pub statistic: String,
    pub mean: f64,
    pub var: f64,
    pub stderr: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct McSummary {
    pub reps: u64,
    pub seed: u64,
    pub stats: Vec<StatSummary>,
    /// Sample covariance matrix of the statistics, replication-ordered
    /// accumulation.
    pub cov: Vec<Vec<f64>>,
}

impl McSummary {
    pub fn stat(&self, name: &str) -> &StatSummary {
        self.stats
            .iter()
            .find(|s| s.statistic == name)
            .unwrap_or_else(|| panic!("no statistic named {name}"))
    }

    pub fn correlation(&self, i: usize, j: usize) -> f64 {
        self.cov[i][j] / (self.cov[i][i] * self.cov[j][j]).sqrt()
    }
}

/// Estimate the named statistics over `reps` replications.
///
/// `estimator` maps one replication's stream to one value per statistic.
pub fn mc_harness<F>(names: &[&str], reps: u64, master_seed: u64, estimator: F) -> McSummary
where
    F: Fn(RngSeed) -> Vec<f64> + Sync,
{
    assert!(reps >= 1, "need at least one replication");
    let rows = par_replications(reps, master_seed, |seed| {
        let row = estimator(seed);
        assert_eq!(row.len(), names.len(), "estimator arity mismatch");
        row
    });
    let k = names.len();
    let mut cols: Vec<Vec<f64>> = vec![Vec::with_capacity(reps as usize); k];
    for row in &rows {
        for (j, &x) in row.iter().enumerate() {
            cols[j].push(x);
        }
    }
    let means: Vec<f64> = cols.iter().map(|c| mean(c)).collect();
    let mut cov = vec![vec![0.0; k]; k];
    if reps > 1 {
        for i in 0..k {
            for j in i..k {
                let c = covariance(&cols[i], &cols[j], means[i], means[j]);
                cov[i][j] = c;
                cov[j][i] = c;
            }
        }
    }
    let stats = names
        .iter()
        .enumerate()
        .map(|(i, name)| StatSummary {
            statistic: name.to_string(),
            mean: means[i],
            var: cov[i][i],
            stderr: (cov[i][i] / reps as f64).sqrt(),
        })
        .collect();
    McSummary {
        reps,
        seed: master_seed,
        stats,
        cov,
    }
}

/// Compensated sum over replication-ordered values (exposed for commands
/// that aggregate something other than moments).
pub fn ordered_sum(xs: &[f64]) -> f64 {
    let mut k = Kahan::default();
    for &x in xs {
        k.add(x);
    }
    k.value()
}
