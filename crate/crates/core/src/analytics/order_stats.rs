use super::cdf::CdfKind;
use crate::error::{Error, Result};
use statrs::function::gamma::ln_gamma;

/// `f(p, i) = Σ_{j=0}^{i} C(n,j) p^{n-j} (1-p)^j`: probability that at most
/// `i` of `n` i.i.d. samples exceed a level whose CDF value is `p`.
///
/// Terms are formed in the log domain so that `n` up to 10⁵ neither
/// overflows the binomial coefficient nor underflows the powers prematurely.
pub fn partial_binomial_sum(n: u64, i: u64, p: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&p));
    if i >= n {
        return 1.0;
    }
    if p <= 0.0 {
        return 0.0;
    }
    if p >= 1.0 {
        return 1.0;
    }
    let (ln_p, ln_q) = (p.ln(), (-p).ln_1p());
    let ln_n_fact = ln_gamma(n as f64 + 1.0);
    let mut sum = 0.0;
    for j in 0..=i {
        let k = n - j;
        let ln_binom = ln_n_fact - ln_gamma(j as f64 + 1.0) - ln_gamma(k as f64 + 1.0);
        sum += (ln_binom + k as f64 * ln_p + j as f64 * ln_q).exp();
    }
    sum.clamp(0.0, 1.0)
}

/// CDF of the `i`-th largest of `n` i.i.d. draws from `parent`, at `x`.
pub fn order_stat_cdf(parent: &CdfKind<'_>, i: u64, n: u64, x: f64) -> Result<f64> {
    if i == 0 || i > n {
        return Err(Error::Domain(format!("rank {i} outside 1..={n}")));
    }
    let f = parent.eval(x)?;
    if i == 1 {
        return Ok(f.powf(n as f64));
    }
    Ok(partial_binomial_sum(n, i - 1, f))
}
