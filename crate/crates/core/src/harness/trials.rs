use crate::analytics::{build_threshold_table, ThresholdTable};
use crate::centralized::{best_per_band_rate, event_d, favorites, optimal_assignment_matching};
use crate::channel::{compute_sinr, draw_realization, NetworkConfig};
use crate::distributed::allocate_distributed;
use crate::error::{Error, Result};
use crate::rng::{stream_rng, Stream};
use crate::stats::mean_stderr;
use rayon::prelude::*;
use serde::Serialize;
use std::fmt;

/// Default ceiling on `N·M·trials` for one call.
pub const DEFAULT_WORK_BUDGET: u128 = 20_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Centralized,
    Distributed,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Centralized => "centralized",
            Scheme::Distributed => "distributed",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    /// Worker threads; `None` uses the global rayon pool.
    pub workers: Option<usize>,
    pub work_budget: u128,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            workers: None,
            work_budget: DEFAULT_WORK_BUDGET,
        }
    }
}

/// Everything kept from one trial.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub sum_rate: f64,
    pub info_bits: f64,
    pub event_d: bool,
    /// `Σ_m log2(1 + max_n S_l(m,n))` for the trial's realization.
    pub lower_bound_rate: f64,
    /// `Σ_m log2(1 + max_n S_u(m,n))`.
    pub upper_bound_rate: f64,
    /// Claiming users (distributed) or assigned users (centralized).
    pub selected_users: Vec<usize>,
    pub idle_bands: Vec<usize>,
}

/// Statistics of one scheme over a batch of trials.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialAggregate {
    pub scheme: Scheme,
    pub num_secondary: usize,
    pub num_bands: usize,
    pub trials: usize,
    pub mean_sum_rate: f64,
    pub stderr_sum_rate: f64,
    pub mean_info_bits: f64,
    /// Per-user frequency of claiming a band (distributed) or of being
    /// assigned one (centralized).
    pub per_user_candidacy: Vec<f64>,
    pub event_d_frequency: f64,
    pub idle_band_frequency: Vec<f64>,
    pub mean_lower_bound_rate: f64,
    pub stderr_lower_bound_rate: f64,
    pub mean_upper_bound_rate: f64,
    pub stderr_upper_bound_rate: f64,
    #[serde(skip)]
    pub records: Vec<TrialRecord>,
}

impl TrialAggregate {
    /// Reduces per-trial records in order.
    pub fn from_records(
        scheme: Scheme,
        num_secondary: usize,
        num_bands: usize,
        records: Vec<TrialRecord>,
    ) -> Self {
        let trials = records.len();
        let t = trials as f64;
        let (mean_sum_rate, stderr_sum_rate) = mean_stderr(records.iter().map(|r| r.sum_rate));
        let (mean_lower_bound_rate, stderr_lower_bound_rate) =
            mean_stderr(records.iter().map(|r| r.lower_bound_rate));
        let (mean_upper_bound_rate, stderr_upper_bound_rate) =
            mean_stderr(records.iter().map(|r| r.upper_bound_rate));
        let mean_info_bits = records.iter().map(|r| r.info_bits).sum::<f64>() / t;
        let event_d_frequency = records.iter().filter(|r| r.event_d).count() as f64 / t;

        let mut selected = vec![0u64; num_secondary];
        let mut idle = vec![0u64; num_bands];
        for r in &records {
            for &n in &r.selected_users {
                selected[n] += 1;
            }
            for &m in &r.idle_bands {
                idle[m] += 1;
            }
        }
        Self {
            scheme,
            num_secondary,
            num_bands,
            trials,
            mean_sum_rate,
            stderr_sum_rate,
            mean_info_bits,
            per_user_candidacy: selected.iter().map(|&c| c as f64 / t).collect(),
            event_d_frequency,
            idle_band_frequency: idle.iter().map(|&c| c as f64 / t).collect(),
            mean_lower_bound_rate,
            stderr_lower_bound_rate,
            mean_upper_bound_rate,
            stderr_upper_bound_rate,
            records,
        }
    }
}

fn run_one(
    cfg: &NetworkConfig,
    scheme: Scheme,
    thresholds: Option<&ThresholdTable>,
    trial: u64,
) -> Result<TrialRecord> {
    let table = compute_sinr(cfg, &draw_realization(cfg, trial))?;
    let fav = favorites(&table);
    let mut record = TrialRecord {
        sum_rate: 0.0,
        info_bits: 0.0,
        event_d: event_d(&fav),
        lower_bound_rate: best_per_band_rate(&table.s_lower),
        upper_bound_rate: best_per_band_rate(&table.s_upper),
        selected_users: Vec::new(),
        idle_bands: Vec::new(),
    };
    match scheme {
        Scheme::Centralized => {
            let a = optimal_assignment_matching(&table);
            record.sum_rate = a.sum_rate;
            record.selected_users = a.pairs.iter().map(|p| p.1).collect();
        }
        Scheme::Distributed => {
            let th = thresholds.expect("distributed runs carry thresholds");
            let mut rng = stream_rng(cfg.seed(), Stream::Contention(trial));
            let out = allocate_distributed(&table, th, &mut rng);
            record.sum_rate = out.assignment.sum_rate;
            record.info_bits = out.info_bits;
            record.selected_users = out
                .candidate_sets
                .claims
                .iter()
                .enumerate()
                .filter_map(|(n, c)| c.map(|_| n))
                .collect();
            record.idle_bands = out.idle_bands;
        }
    }
    Ok(record)
}

/// Runs `trials` independent trials of `scheme` with default options.
pub fn run_trials(cfg: &NetworkConfig, scheme: Scheme, trials: usize) -> Result<TrialAggregate> {
    run_trials_with(cfg, scheme, trials, &RunOptions::default())
}

/// Runs `trials` trials. Trial `i` uses the realization and contention
/// substreams `i` of `cfg.seed()`, and the reduction runs in trial order, so
/// the result does not depend on the worker count.
pub fn run_trials_with(
    cfg: &NetworkConfig,
    scheme: Scheme,
    trials: usize,
    opts: &RunOptions,
) -> Result<TrialAggregate> {
    if trials == 0 {
        return Err(Error::Domain("at least one trial is required".into()));
    }
    let work = cfg.num_secondary() as u128 * cfg.num_bands() as u128 * trials as u128;
    if work > opts.work_budget {
        return Err(Error::Budget {
            requested: work,
            budget: opts.work_budget,
        });
    }
    let thresholds = match scheme {
        Scheme::Distributed if cfg.num_secondary() >= 2 => {
            Some(build_threshold_table(cfg, cfg.num_secondary() as u64)?)
        }
        Scheme::Distributed => {
            return Err(Error::Domain("distributed scheme needs N >= 2".into()));
        }
        Scheme::Centralized => None,
    };
    let th = thresholds.as_ref();
    let collect = || -> Result<Vec<TrialRecord>> {
        (0..trials as u64)
            .into_par_iter()
            .map(|t| run_one(cfg, scheme, th, t))
            .collect()
    };
    let records = match opts.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| Error::Contract(format!("cannot start worker pool: {e}")))?
            .install(collect)?,
        None => collect()?,
    };
    Ok(TrialAggregate::from_records(
        scheme,
        cfg.num_secondary(),
        cfg.num_bands(),
        records,
    ))
}
