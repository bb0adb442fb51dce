use super::trials::{run_trials_with, RunOptions, Scheme, TrialAggregate};
use crate::analytics::solve_threshold;
use crate::channel::NetworkConfig;
use crate::error::{Error, Result};
use crate::rng::derive_seed;
use crate::stats::LinearFit;
use serde::Serialize;

/// Smallest population included in the double-log fit; below it the
/// multiuser-diversity growth has not yet set in.
pub const FIT_MIN_POPULATION: usize = 50;

/// Both schemes across a sweep of population sizes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingReport {
    pub n_values: Vec<usize>,
    pub centralized: Vec<TrialAggregate>,
    pub distributed: Vec<TrialAggregate>,
    /// `M·log2(log2 N)` per population.
    pub predicted: Vec<f64>,
    /// Least squares of the centralized mean sum rate on `log2(log2 N)`, over
    /// `N ≥ 50`. `None` with fewer than two such points.
    pub fit: Option<LinearFit>,
}

fn double_log(n: usize) -> f64 {
    (n as f64).log2().log2()
}

fn check_sweep(n_values: &[usize], bands: usize) -> Result<()> {
    if n_values.is_empty() {
        return Err(Error::config("n_values", "sweep is empty"));
    }
    if n_values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::config("n_values", "must be strictly increasing"));
    }
    if n_values[0] < bands.max(2) {
        return Err(Error::config(
            "n_values",
            format!("every N must be at least max(M, 2) = {}", bands.max(2)),
        ));
    }
    Ok(())
}

/// Runs both schemes at every population in `n_values`.
///
/// Each population gets its own seed derived from the template seed and `N`,
/// so adding or removing a point leaves the others unchanged. Both schemes
/// see identical realizations at a given `N`.
pub fn scaling_sweep(
    template: &NetworkConfig,
    n_values: &[usize],
    trials: usize,
    opts: &RunOptions,
) -> Result<ScalingReport> {
    check_sweep(n_values, template.num_bands())?;
    let mut centralized = Vec::with_capacity(n_values.len());
    let mut distributed = Vec::with_capacity(n_values.len());
    for &n in n_values {
        let cfg = template
            .with_population(n)?
            .with_seed(derive_seed(template.seed(), n as u64));
        centralized.push(run_trials_with(&cfg, Scheme::Centralized, trials, opts)?);
        distributed.push(run_trials_with(&cfg, Scheme::Distributed, trials, opts)?);
    }
    let bands = template.num_bands() as f64;
    let predicted = n_values.iter().map(|&n| bands * double_log(n)).collect();
    let (xs, ys): (Vec<f64>, Vec<f64>) = n_values
        .iter()
        .zip(&centralized)
        .filter(|(&n, _)| n >= FIT_MIN_POPULATION)
        .map(|(&n, agg)| (double_log(n), agg.mean_sum_rate))
        .unzip();
    Ok(ScalingReport {
        n_values: n_values.to_vec(),
        centralized,
        distributed,
        predicted,
        fit: LinearFit::fit(&xs, &ys),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdRow {
    pub n: usize,
    pub rho_db: f64,
    pub k: usize,
    pub lambda: f64,
}

/// `λ(0,0)` over a grid of population, SNR and primary-network size.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdSweep {
    pub rows: Vec<ThresholdRow>,
    /// λ strictly increases with `N` at every fixed (ρ, K).
    pub increasing_in_n: bool,
    /// λ strictly increases with ρ at every fixed (N, K).
    pub increasing_in_rho: bool,
    /// λ strictly decreases with `K` at every fixed (N, ρ).
    pub decreasing_in_k: bool,
}

impl ThresholdSweep {
    pub fn lambda(&self, n: usize, rho_db: f64, k: usize) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| r.n == n && r.rho_db == rho_db && r.k == k)
            .map(|r| r.lambda)
    }
}

fn strictly_increasing(values: &[f64]) -> bool {
    values.windows(2).all(|w| w[0] < w[1])
}

fn sorted_dedup<T: PartialOrd + Copy>(values: &[T]) -> Vec<T> {
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).expect("sweep values are comparable"));
    v.dedup_by(|a, b| a == b);
    v
}

/// Tabulates the threshold of link (0, 0) on every grid point. SNR changes
/// rescale both transmit powers, keeping `P_p/P_s` fixed.
pub fn threshold_sweep(
    template: &NetworkConfig,
    n_values: &[usize],
    rho_values_db: &[f64],
    k_values: &[usize],
) -> Result<ThresholdSweep> {
    if n_values.is_empty() || rho_values_db.is_empty() || k_values.is_empty() {
        return Err(Error::config("sweep", "every sweep list must be non-empty"));
    }
    if rho_values_db.iter().any(|r| !r.is_finite()) {
        return Err(Error::config("rho_db_values", "must be finite"));
    }
    let (ns, rhos, ks) = (sorted_dedup(n_values), sorted_dedup(rho_values_db), sorted_dedup(k_values));
    let mut rows = Vec::with_capacity(ns.len() * rhos.len() * ks.len());
    for &n in &ns {
        for &rho_db in &rhos {
            for &k in &ks {
                let cfg = template.with_snr_db(rho_db).with_primaries_per_band(k);
                let lambda = solve_threshold(0, 0, &cfg, n as u64)?;
                rows.push(ThresholdRow { n, rho_db, k, lambda });
            }
        }
    }
    // rows are laid out n-major, then rho, then k
    let at = |i: usize, j: usize, l: usize| rows[(i * rhos.len() + j) * ks.len() + l].lambda;
    let increasing_in_n = (0..rhos.len()).all(|j| {
        (0..ks.len()).all(|l| strictly_increasing(&(0..ns.len()).map(|i| at(i, j, l)).collect::<Vec<_>>()))
    });
    let increasing_in_rho = (0..ns.len()).all(|i| {
        (0..ks.len()).all(|l| strictly_increasing(&(0..rhos.len()).map(|j| at(i, j, l)).collect::<Vec<_>>()))
    });
    let decreasing_in_k = (0..ns.len()).all(|i| {
        (0..rhos.len()).all(|j| {
            strictly_increasing(&(0..ks.len()).rev().map(|l| at(i, j, l)).collect::<Vec<_>>())
        })
    });
    Ok(ThresholdSweep {
        rows,
        increasing_in_n,
        increasing_in_rho,
        decreasing_in_k,
    })
}
