use super::quadrature::integrate;
use crate::error::{Error, Result};
use std::f64::consts::LN_2;

pub const EULER_MASCHERONI: f64 = 0.577_215_664_901_532_9;

/// `E[log2(1 + a·X)]` where `X` is the largest of `n` i.i.d. Exp(1) draws,
/// i.e. `∫ log2(1+ax) dG⁽¹⁾(x)` with `G⁽¹⁾(x) = (1 - e^{-x})^n`.
///
/// Integrated by parts as `∫ (1 - G⁽¹⁾(x)) · a / ((1+ax) ln 2) dx`. The
/// integrand is flat up to `ln n` and decays like `n e^{-x}` after it, so the
/// range is split there and truncated 45 e-folds further out.
pub fn expected_log_max(a: f64, n: u64) -> Result<f64> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::Domain(format!("scale must be > 0, got {a}")));
    }
    if n == 0 {
        return Err(Error::Domain("population must be at least 1".into()));
    }
    let nf = n as f64;
    let integrand = |x: f64| {
        // 1 - (1 - e^{-x})^n without cancellation
        let tail = if x == 0.0 { 1.0 } else { -(nf * (-(-x).exp()).ln_1p()).exp_m1() };
        tail * a / ((1.0 + a * x) * LN_2)
    };
    let knee = nf.ln().max(1.0);
    Ok(integrate(integrand, 0.0, knee, 1e-10) + integrate(integrand, knee, knee + 45.0, 1e-10))
}

/// Mean and variance of the maximum of `n` i.i.d. Exp(1) variables:
/// `(Σ 1/k, Σ 1/k²)`.
pub fn harmonic_moments(n: u64) -> (f64, f64) {
    // smallest terms first
    (1..=n).rev().fold((0.0, 0.0), |(m, v), k| {
        let k = k as f64;
        (m + 1.0 / k, v + 1.0 / (k * k))
    })
}

/// Bracket `[ln n + ζ + 1/(2(n+1)), ln n + ζ + 1/(2n)]` on the harmonic number.
pub fn harmonic_bracket(n: u64) -> (f64, f64) {
    let nf = n as f64;
    let base = nf.ln() + EULER_MASCHERONI;
    (base + 0.5 / (nf + 1.0), base + 0.5 / nf)
}
