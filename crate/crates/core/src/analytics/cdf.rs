use crate::channel::NetworkConfig;
use crate::error::{Error, Result};

/// Survival function `e^{-x·scale} / Π_j (1 + ratio·c_j·x)` of
/// `Y / (1/scale' + ratio·Σ c_j Z_j)` with `Y, Z_j ~ Exp(1)`.
///
/// Integrating out the exponential interference terms gives one
/// Laplace-transform factor per primary user, which is how both the bound
/// CDFs and the per-user CDF reduce to this product.
fn survival(x: f64, inv_snr_eta: f64, ratio: f64, coeffs: impl Iterator<Item = f64>) -> f64 {
    let denom: f64 = coeffs.map(|c| 1.0 + ratio * c * x).product();
    (-x * inv_snr_eta).exp() / denom
}

fn check_x(x: f64) -> Result<()> {
    if x >= 0.0 && !x.is_nan() {
        Ok(())
    } else {
        Err(Error::Domain(format!("CDF argument must be >= 0, got {x}")))
    }
}

fn check_band(cfg: &NetworkConfig, m: usize) -> Result<()> {
    if m < cfg.num_bands() {
        Ok(())
    } else {
        Err(Error::Domain(format!("band {m} out of range (M={})", cfg.num_bands())))
    }
}

/// CDF of the lower-bound variable `S_l(m,n)`:
/// `1 - e^{-x/(ρ η_min)} / (1 + (P_p/P_s) γ_max x)^{K_m}`.
pub fn cdf_lower(x: f64, m: usize, cfg: &NetworkConfig) -> Result<f64> {
    check_x(x)?;
    check_band(cfg, m)?;
    let g = cfg.gamma_ratio_max();
    let s = survival(
        x,
        1.0 / (cfg.snr() * cfg.eta_min()),
        cfg.interference_ratio(),
        std::iter::repeat_n(g, cfg.primary_count(m)),
    );
    Ok(1.0 - s)
}

/// CDF of the upper-bound variable `S_u(m,n)` (`η_max`, `γ_min` substituted).
pub fn cdf_upper(x: f64, m: usize, cfg: &NetworkConfig) -> Result<f64> {
    check_x(x)?;
    check_band(cfg, m)?;
    let g = cfg.gamma_ratio_min();
    let s = survival(
        x,
        1.0 / (cfg.snr() * cfg.eta_max()),
        cfg.interference_ratio(),
        std::iter::repeat_n(g, cfg.primary_count(m)),
    );
    Ok(1.0 - s)
}

/// Exact CDF `T(x; m, n)` of user `n`'s SINR on band `m`:
/// `1 - e^{-x/(ρ η_n)} · Π_j (1 + (P_p/P_s)(γ_{n,j}/η_n) x)^{-1}`.
pub fn cdf_exact(x: f64, m: usize, n: usize, cfg: &NetworkConfig) -> Result<f64> {
    check_x(x)?;
    check_band(cfg, m)?;
    if n >= cfg.num_secondary() {
        return Err(Error::Domain(format!(
            "user {n} out of range (N={})",
            cfg.num_secondary()
        )));
    }
    Ok(1.0 - exact_survival(x, m, n, cfg))
}

/// `1 - T(x; m, n)` without the cancellation of `1 - (1 - s)`.
pub(crate) fn exact_survival(x: f64, m: usize, n: usize, cfg: &NetworkConfig) -> f64 {
    survival(
        x,
        1.0 / (cfg.snr() * cfg.eta(n)),
        cfg.interference_ratio(),
        (0..cfg.primary_count(m)).map(|j| cfg.relative_gamma(n, j)),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CdfTag {
    LowerBound,
    UpperBound,
    Exact,
}

/// A parent distribution for order statistics: one of `F_l(·;m)`,
/// `F_u(·;m)` or `T(·;m,n)`.
#[derive(Debug, Clone, Copy)]
pub struct CdfKind<'a> {
    pub tag: CdfTag,
    pub band: usize,
    /// Ignored by the bound kinds.
    pub user: usize,
    pub cfg: &'a NetworkConfig,
}

impl<'a> CdfKind<'a> {
    pub fn lower(cfg: &'a NetworkConfig, band: usize) -> Self {
        Self { tag: CdfTag::LowerBound, band, user: 0, cfg }
    }

    pub fn upper(cfg: &'a NetworkConfig, band: usize) -> Self {
        Self { tag: CdfTag::UpperBound, band, user: 0, cfg }
    }

    pub fn exact(cfg: &'a NetworkConfig, band: usize, user: usize) -> Self {
        Self { tag: CdfTag::Exact, band, user, cfg }
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        match self.tag {
            CdfTag::LowerBound => cdf_lower(x, self.band, self.cfg),
            CdfTag::UpperBound => cdf_upper(x, self.band, self.cfg),
            CdfTag::Exact => cdf_exact(x, self.band, self.user, self.cfg),
        }
    }
}
