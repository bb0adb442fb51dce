use crate::analytics::{build_threshold_table, cdf_exact, cdf_lower, cdf_upper, THRESHOLD_TOLERANCE};
use crate::centralized::{event_d, favorites};
use crate::channel::{compute_sinr, draw_realization, sample_link_sinr, NetworkConfig, SinrTable};
use crate::distributed::resolve_contention;
use crate::error::{Error, Result};
use crate::rng::{derive_seed, stream_rng, Stream};
use crate::stats::{chi_square_uniform, ks_distance};
use rayon::prelude::*;
use serde::Serialize;

pub const MIN_VALIDATION_SAMPLES: usize = 10_000;

/// Relative slack allowed on the bound sandwich and order interleaving.
const ORDER_TOLERANCE: f64 = 1e-9;
/// Required p-value of the contention uniformity test.
const CHI_SQUARE_ALPHA: f64 = 1e-3;
/// KS critical coefficient at the 0.1% level.
const KS_CRITICAL_COEFF: f64 = 1.949;
const CONTENTION_SET_SIZE: usize = 5;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationCheck {
    pub name: String,
    pub passed: bool,
    pub statistic: f64,
    pub threshold: f64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<ValidationCheck>,
    pub passed: bool,
}

impl ValidationReport {
    pub fn check(&self, name: &str) -> Option<&ValidationCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn leq(a: f64, b: f64) -> bool {
    a <= b + ORDER_TOLERANCE * b.abs().max(a.abs())
}

fn sorted_desc(row: &[f64]) -> Vec<f64> {
    let mut v = row.to_vec();
    v.sort_unstable_by(|a, b| b.total_cmp(a));
    v
}

/// Entries with `S_l > SINR` or `SINR > S_u`.
fn sandwich_violations(t: &SinrTable) -> usize {
    (0..t.num_bands())
        .flat_map(|m| (0..t.num_users()).map(move |n| (m, n)))
        .filter(|&idx| !(leq(t.s_lower[idx], t.sinr[idx]) && leq(t.sinr[idx], t.s_upper[idx])))
        .count()
}

/// Ranks `i` at which the `i`-th largest values are out of order.
fn interleaving_violations(t: &SinrTable) -> usize {
    (0..t.num_bands())
        .map(|m| {
            let (l, s, u) = (
                sorted_desc(t.s_lower.row(m)),
                sorted_desc(t.sinr.row(m)),
                sorted_desc(t.s_upper.row(m)),
            );
            (0..l.len()).filter(|&i| !(leq(l[i], s[i]) && leq(s[i], u[i]))).count()
        })
        .sum()
}

fn cdf_grid(cfg: &NetworkConfig) -> Vec<f64> {
    let scale = cfg.snr() * cfg.eta_max();
    (0..=240).map(|i| scale * 10f64.powf(-4.0 + i as f64 / 30.0)).collect()
}

fn cdf_check(cfg: &NetworkConfig) -> Result<ValidationCheck> {
    let grid = cdf_grid(cfg);
    if cfg.is_homogeneous() {
        let mut worst: f64 = 0.0;
        for m in 0..cfg.num_bands() {
            for &x in &grid {
                let l = cdf_lower(x, m, cfg)?;
                worst = worst.max((cdf_upper(x, m, cfg)? - l).abs());
                for n in 0..cfg.num_secondary() {
                    worst = worst.max((cdf_exact(x, m, n, cfg)? - l).abs());
                }
            }
        }
        Ok(ValidationCheck {
            name: "cdf_bound_identity".into(),
            passed: worst == 0.0,
            statistic: worst,
            threshold: 0.0,
            detail: "homogeneous network: exact and bound CDFs must coincide".into(),
        })
    } else {
        let mut violations = 0usize;
        for m in 0..cfg.num_bands() {
            for &x in &grid {
                let (l, u) = (cdf_lower(x, m, cfg)?, cdf_upper(x, m, cfg)?);
                for n in 0..cfg.num_secondary() {
                    let t = cdf_exact(x, m, n, cfg)?;
                    if !(u <= t + 1e-15 && t <= l + 1e-15) {
                        violations += 1;
                    }
                }
            }
        }
        Ok(ValidationCheck {
            name: "cdf_dominance".into(),
            passed: violations == 0,
            statistic: violations as f64,
            threshold: 0.0,
            detail: "F_u <= T <= F_l on a log-spaced grid".into(),
        })
    }
}

/// Runs the property suite on `cfg`.
///
/// The exact-CDF KS test uses `samples` independent SINR draws per probed
/// link; the structural checks (bound sandwich, order interleaving, event D)
/// use `samples / 10` full realizations.
pub fn validate(cfg: &NetworkConfig, samples: usize) -> Result<ValidationReport> {
    if samples < MIN_VALIDATION_SAMPLES {
        return Err(Error::Domain(format!(
            "validation needs at least {MIN_VALIDATION_SAMPLES} samples, got {samples}"
        )));
    }
    let seed = derive_seed(cfg.seed(), 0x7a11_da7e);
    let mut checks = vec![cdf_check(cfg)?];

    // Exact CDF against empirical draws on the first and last link.
    let links = [(0, 0), (cfg.num_bands() - 1, cfg.num_secondary() - 1)];
    let ks_threshold = (KS_CRITICAL_COEFF / (samples as f64).sqrt()).max(0.01);
    for (idx, &(m, n)) in links.iter().enumerate() {
        let mut rng = stream_rng(seed, Stream::Auxiliary(idx as u64));
        let mut draws: Vec<f64> = (0..samples).map(|_| sample_link_sinr(cfg, m, n, &mut rng)).collect();
        let d = ks_distance(&mut draws, |x| cdf_exact(x, m, n, cfg).expect("valid link"));
        checks.push(ValidationCheck {
            name: format!("exact_cdf_ks_{m}_{n}"),
            passed: d < ks_threshold,
            statistic: d,
            threshold: ks_threshold,
            detail: format!("{samples} SINR draws of band {m}, user {n}"),
        });
    }

    let realizations = (samples / 10).max(1);
    let reseeded = cfg.with_seed(seed);
    let per_trial: Vec<(usize, usize, bool)> = (0..realizations as u64)
        .into_par_iter()
        .map(|t| {
            let table = compute_sinr(&reseeded, &draw_realization(&reseeded, t))?;
            Ok((
                sandwich_violations(&table),
                interleaving_violations(&table),
                event_d(&favorites(&table)),
            ))
        })
        .collect::<Result<_>>()?;
    let sandwich: usize = per_trial.iter().map(|r| r.0).sum();
    let interleave: usize = per_trial.iter().map(|r| r.1).sum();
    checks.push(ValidationCheck {
        name: "bound_sandwich".into(),
        passed: sandwich == 0,
        statistic: sandwich as f64,
        threshold: 0.0,
        detail: format!("S_l <= SINR <= S_u over {realizations} realizations"),
    });
    checks.push(ValidationCheck {
        name: "order_interleaving".into(),
        passed: interleave == 0,
        statistic: interleave as f64,
        threshold: 0.0,
        detail: format!("sorted S_l <= sorted SINR <= sorted S_u over {realizations} realizations"),
    });

    let d_freq = per_trial.iter().filter(|r| r.2).count() as f64 / realizations as f64;
    let (users, bands) = (cfg.num_secondary() as f64, cfg.num_bands());
    if cfg.is_homogeneous() {
        // i.i.d. rows: each favorite is uniform and independent across bands
        let p: f64 = (0..bands).map(|k| 1.0 - k as f64 / users).product();
        let tol = 4.0 * (p * (1.0 - p) / realizations as f64).sqrt() + 1.0 / realizations as f64;
        checks.push(ValidationCheck {
            name: "event_d_frequency".into(),
            passed: (d_freq - p).abs() <= tol,
            statistic: d_freq,
            threshold: tol,
            detail: format!("expected P(D) = {p:.6} for i.i.d. bands"),
        });
    } else {
        checks.push(ValidationCheck {
            name: "event_d_frequency".into(),
            passed: true,
            statistic: d_freq,
            threshold: f64::NAN,
            detail: "heterogeneous network: reported only".into(),
        });
    }

    let mut rng = stream_rng(seed, Stream::Auxiliary(1000));
    let candidates: Vec<usize> = (0..CONTENTION_SET_SIZE).collect();
    let mut wins = [0u64; CONTENTION_SET_SIZE];
    for _ in 0..samples {
        wins[resolve_contention(&candidates, &mut rng)?] += 1;
    }
    let (chi2, p_value) = chi_square_uniform(&wins);
    checks.push(ValidationCheck {
        name: "contention_uniformity".into(),
        passed: p_value > CHI_SQUARE_ALPHA,
        statistic: p_value,
        threshold: CHI_SQUARE_ALPHA,
        detail: format!("chi-square {chi2:.3} over {samples} contentions of {CONTENTION_SET_SIZE}"),
    });

    if cfg.num_secondary() >= 2 {
        let population = cfg.num_secondary() as u64;
        let table = build_threshold_table(cfg, population)?;
        let target = 1.0 - 1.0 / population as f64;
        let mut worst: f64 = 0.0;
        for m in 0..cfg.num_bands() {
            for n in 0..cfg.num_secondary() {
                worst = worst.max((cdf_exact(table.get(m, n), m, n, cfg)? - target).abs());
            }
        }
        checks.push(ValidationCheck {
            name: "threshold_residual".into(),
            passed: worst <= THRESHOLD_TOLERANCE,
            statistic: worst,
            threshold: THRESHOLD_TOLERANCE,
            detail: format!("|T(lambda) - (1 - 1/N)| over all {} links", cfg.num_bands() * cfg.num_secondary()),
        });
    }

    let passed = checks.iter().all(|c| c.passed);
    Ok(ValidationReport { checks, passed })
}
