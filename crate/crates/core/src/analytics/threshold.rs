use crate::channel::NetworkConfig;
use crate::error::{Error, Result};
use crate::matrix::BandMatrix;
use serde::Serialize;

/// Maximum allowed `|T(λ) - (1 - 1/N)|` for a solved threshold.
pub const THRESHOLD_TOLERANCE: f64 = 1e-10;

const MAX_BISECTIONS: usize = 200;

/// Per-(band, user) SINR thresholds: the `(1 - 1/N)`-quantile of each link's
/// SINR distribution.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdTable {
    pub lambda: BandMatrix,
    pub population_size: u64,
}

impl ThresholdTable {
    pub fn get(&self, m: usize, n: usize) -> f64 {
        self.lambda[(m, n)]
    }
}

/// `ln(1 - T(x; m, n))`, strictly decreasing from 0.
fn log_survival(x: f64, m: usize, n: usize, cfg: &NetworkConfig) -> f64 {
    let ratio = cfg.interference_ratio();
    let interference: f64 = (0..cfg.primary_count(m))
        .map(|j| (ratio * cfg.relative_gamma(n, j) * x).ln_1p())
        .sum();
    -x / (cfg.snr() * cfg.eta(n)) - interference
}

/// Solves `T(λ; m, n) = 1 - 1/N` by bracketing bisection.
///
/// The bracket starts at `[0, ρ η_n]` and its upper end doubles until the
/// CDF exceeds the target; `T` is continuous and strictly increasing, so the
/// root is unique.
pub fn solve_threshold(m: usize, n: usize, cfg: &NetworkConfig, population: u64) -> Result<f64> {
    if population < 2 {
        return Err(Error::Domain(format!(
            "threshold needs a population of at least 2, got {population}"
        )));
    }
    if m >= cfg.num_bands() || n >= cfg.num_secondary() {
        return Err(Error::Domain(format!("link ({m}, {n}) out of range")));
    }
    let target = -(population as f64).ln();
    // positive below the root, negative above
    let excess = |x: f64| log_survival(x, m, n, cfg) - target;

    let mut hi = cfg.snr() * cfg.eta(n);
    while excess(hi) >= 0.0 {
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(Error::Domain(format!("no finite threshold for link ({m}, {n})")));
        }
    }
    let mut lo = 0.0;
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if excess(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(if excess(lo).abs() < excess(hi).abs() { lo } else { hi })
}

/// Thresholds for every link of `cfg`, for a population of `population` users.
pub fn build_threshold_table(cfg: &NetworkConfig, population: u64) -> Result<ThresholdTable> {
    let (bands, users) = (cfg.num_bands(), cfg.num_secondary());
    let mut lambda = BandMatrix::zeros(bands, users);
    for m in 0..bands {
        for n in 0..users {
            lambda[(m, n)] = solve_threshold(m, n, cfg, population)?;
        }
    }
    Ok(ThresholdTable {
        lambda,
        population_size: population,
    })
}
