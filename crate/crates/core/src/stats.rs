//! Sample statistics used by the harness and the validation suite.

use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Sample mean and standard error of the mean (`s / √n`, 0 for `n < 2`).
pub fn mean_stderr(values: impl ExactSizeIterator<Item = f64> + Clone) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.clone().sum::<f64>() / n as f64;
    if n < 2 {
        return (mean, 0.0);
    }
    let ss: f64 = values.map(|v| (v - mean).powi(2)).sum();
    let sd = (ss / (n - 1) as f64).sqrt();
    (mean, sd / (n as f64).sqrt())
}

/// Two-sided Kolmogorov–Smirnov distance between `samples` and `cdf`.
/// Sorts `samples` in place.
pub fn ks_distance(samples: &mut [f64], cdf: impl Fn(f64) -> f64) -> f64 {
    samples.sort_unstable_by(f64::total_cmp);
    let n = samples.len() as f64;
    samples.iter().enumerate().fold(0.0, |d: f64, (i, &x)| {
        let f = cdf(x);
        let above = (i as f64 + 1.0) / n - f;
        let below = f - i as f64 / n;
        d.max(above).max(below)
    })
}

/// Pearson goodness-of-fit against equal cell probabilities. Returns
/// `(statistic, p-value)`.
pub fn chi_square_uniform(counts: &[u64]) -> (f64, f64) {
    let total: u64 = counts.iter().sum();
    let expected = total as f64 / counts.len() as f64;
    let stat: f64 = counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    let dof = (counts.len() - 1) as f64;
    let p = ChiSquared::new(dof).map_or(f64::NAN, |d| d.sf(stat));
    (stat, p)
}

/// Ordinary least-squares line `y = slope·x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

impl LinearFit {
    /// `None` for fewer than two points or constant `x`.
    pub fn fit(xs: &[f64], ys: &[f64]) -> Option<Self> {
        assert_eq!(xs.len(), ys.len());
        let n = xs.len() as f64;
        if xs.len() < 2 {
            return None;
        }
        let mx = xs.iter().sum::<f64>() / n;
        let my = ys.iter().sum::<f64>() / n;
        let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
        if sxx == 0.0 {
            return None;
        }
        let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let slope = sxy / sxx;
        let intercept = my - slope * mx;
        let ss_res: f64 = xs
            .iter()
            .zip(ys)
            .map(|(x, y)| (y - slope * x - intercept).powi(2))
            .sum();
        let ss_tot: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
        let r_squared = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
        Some(Self {
            slope,
            intercept,
            r_squared,
        })
    }
}
