//! Network configuration, Rayleigh fading draws and the SINR table.
//!
//! Squared fading magnitudes are drawn directly as unit-mean exponentials.
//! The SINR of user `n` on band `m` is evaluated in normalized form
//!
//! ```text
//! sinr = |g|² / (1/(ρ·η_n) + (P_p/P_s)·Σ_j (γ_{n,j}/η_n)·|h_j|²)
//! ```
//!
//! which equals `P_s·η_n·|g|² / (N_0 + P_p·Σ_j γ_{n,j}·|h_j|²)`. The bound
//! tables use the same expression with the extreme factors substituted, so a
//! homogeneous network yields bit-identical bound and exact tables.

use crate::error::{Error, Result};
use crate::matrix::BandMatrix;
use crate::rng::{stream_rng, Stream};
use rand::Rng;
use rand_distr::{Distribution, Exp1};
use serde::{Deserialize, Serialize};

/// Plain parameter bundle; validated into a [`NetworkConfig`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkParams {
    pub num_secondary: usize,
    pub num_bands: usize,
    pub primary_count: Vec<usize>,
    pub power_secondary: f64,
    pub power_primary: f64,
    pub noise_power: f64,
    pub eta: Vec<f64>,
    /// `num_secondary` rows of `max(primary_count)` entries.
    pub gamma: Vec<Vec<f64>>,
    pub seed: u64,
}

/// Static parameters of one cognitive network.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "NetworkParams", into = "NetworkParams")]
pub struct NetworkConfig {
    params: NetworkParams,
    max_primary: usize,
}

fn positive(key: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::config(key, format!("must be finite and > 0, got {v}")))
    }
}

impl TryFrom<NetworkParams> for NetworkConfig {
    type Error = Error;

    fn try_from(p: NetworkParams) -> Result<Self> {
        if p.num_secondary == 0 {
            return Err(Error::config("num_secondary", "must be at least 1"));
        }
        if p.num_bands == 0 {
            return Err(Error::config("num_bands", "must be at least 1"));
        }
        if p.num_bands > p.num_secondary {
            return Err(Error::config(
                "num_bands",
                format!(
                    "M={} exceeds N={}; each band needs a distinct user",
                    p.num_bands, p.num_secondary
                ),
            ));
        }
        if p.primary_count.len() != p.num_bands {
            return Err(Error::config(
                "primary_count",
                format!("expected {} entries, got {}", p.num_bands, p.primary_count.len()),
            ));
        }
        positive("power_secondary", p.power_secondary)?;
        positive("power_primary", p.power_primary)?;
        positive("noise_power", p.noise_power)?;
        if p.eta.len() != p.num_secondary {
            return Err(Error::config(
                "eta",
                format!("expected {} entries, got {}", p.num_secondary, p.eta.len()),
            ));
        }
        for &e in &p.eta {
            positive("eta", e)?;
        }
        let max_primary = p.primary_count.iter().copied().max().unwrap_or(0);
        if p.gamma.len() != p.num_secondary {
            return Err(Error::config(
                "gamma",
                format!("expected {} rows, got {}", p.num_secondary, p.gamma.len()),
            ));
        }
        for row in &p.gamma {
            if row.len() != max_primary {
                return Err(Error::config(
                    "gamma",
                    format!("expected rows of {max_primary} entries, got {}", row.len()),
                ));
            }
            for &g in row {
                positive("gamma", g)?;
            }
        }
        Ok(Self {
            params: p,
            max_primary,
        })
    }
}

impl From<NetworkConfig> for NetworkParams {
    fn from(c: NetworkConfig) -> Self {
        c.params
    }
}

impl NetworkConfig {
    pub fn new(params: NetworkParams) -> Result<Self> {
        Self::try_from(params)
    }

    /// Equal path loss everywhere (`η = γ = 1`), `K` primaries per band,
    /// unit noise power, `P_s = ρ` and `P_p = pp_over_ps·P_s`.
    pub fn homogeneous(
        num_secondary: usize,
        num_bands: usize,
        primaries_per_band: usize,
        snr_db: f64,
        pp_over_ps: f64,
        seed: u64,
    ) -> Result<Self> {
        let ps = db_to_linear(snr_db);
        Self::new(NetworkParams {
            num_secondary,
            num_bands,
            primary_count: vec![primaries_per_band; num_bands],
            power_secondary: ps,
            power_primary: pp_over_ps * ps,
            noise_power: 1.0,
            eta: vec![1.0; num_secondary],
            gamma: vec![vec![1.0; primaries_per_band]; num_secondary],
            seed,
        })
    }

    pub fn params(&self) -> &NetworkParams {
        &self.params
    }

    pub fn num_secondary(&self) -> usize {
        self.params.num_secondary
    }

    pub fn num_bands(&self) -> usize {
        self.params.num_bands
    }

    pub fn primary_count(&self, m: usize) -> usize {
        self.params.primary_count[m]
    }

    pub fn max_primary_count(&self) -> usize {
        self.max_primary
    }

    pub fn power_secondary(&self) -> f64 {
        self.params.power_secondary
    }

    pub fn power_primary(&self) -> f64 {
        self.params.power_primary
    }

    pub fn noise_power(&self) -> f64 {
        self.params.noise_power
    }

    pub fn eta(&self, n: usize) -> f64 {
        self.params.eta[n]
    }

    pub fn gamma(&self, n: usize, j: usize) -> f64 {
        self.params.gamma[n][j]
    }

    pub fn seed(&self) -> u64 {
        self.params.seed
    }

    /// Transmit SNR `ρ = P_s / N_0`.
    pub fn snr(&self) -> f64 {
        self.params.power_secondary / self.params.noise_power
    }

    /// `P_p / P_s`.
    pub fn interference_ratio(&self) -> f64 {
        self.params.power_primary / self.params.power_secondary
    }

    pub fn eta_min(&self) -> f64 {
        self.params.eta.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn eta_max(&self) -> f64 {
        self.params.eta.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Interference factor of primary `j` at user `n`, relative to the user's own link gain.
    pub fn relative_gamma(&self, n: usize, j: usize) -> f64 {
        self.params.gamma[n][j] / self.params.eta[n]
    }

    fn relative_gammas(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.num_secondary())
            .flat_map(move |n| (0..self.max_primary).map(move |j| self.relative_gamma(n, j)))
    }

    /// `max_{n,j} γ_{n,j}/η_n`; 1 when no band has primaries (the value is then unused).
    pub fn gamma_ratio_max(&self) -> f64 {
        if self.max_primary == 0 {
            return 1.0;
        }
        self.relative_gammas().fold(f64::NEG_INFINITY, f64::max)
    }

    /// `min_{n,j} γ_{n,j}/η_n`; 1 when no band has primaries.
    pub fn gamma_ratio_min(&self) -> f64 {
        if self.max_primary == 0 {
            return 1.0;
        }
        self.relative_gammas().fold(f64::INFINITY, f64::min)
    }

    /// True when every user sees the same `η` and every interference factor is equal.
    pub fn is_homogeneous(&self) -> bool {
        self.eta_min() == self.eta_max() && self.gamma_ratio_min() == self.gamma_ratio_max()
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        let mut c = self.clone();
        c.params.seed = seed;
        c
    }

    /// Sets `ρ` in dB by rescaling both powers, so `P_p/P_s` is unchanged.
    pub fn with_snr_db(&self, snr_db: f64) -> Self {
        let ps = db_to_linear(snr_db) * self.params.noise_power;
        let ratio = self.interference_ratio();
        let mut c = self.clone();
        c.params.power_secondary = ps;
        c.params.power_primary = ratio * ps;
        c
    }

    /// Sets every band to `k` primaries. Existing per-user interference factors
    /// are cycled to fill the new row length.
    pub fn with_primaries_per_band(&self, k: usize) -> Self {
        let mut p = self.params.clone();
        p.primary_count = vec![k; p.num_bands];
        for (n, row) in p.gamma.iter_mut().enumerate() {
            let old = &self.params.gamma[n];
            *row = (0..k)
                .map(|j| if old.is_empty() { 1.0 } else { old[j % old.len()] })
                .collect();
        }
        Self::new(p).expect("resizing preserves validity")
    }

    /// Resizes the population to `n` users. User `i` inherits the path-loss
    /// factors of template user `i mod N`.
    pub fn with_population(&self, n: usize) -> Result<Self> {
        let mut p = self.params.clone();
        let old_n = self.params.num_secondary;
        p.num_secondary = n;
        p.eta = (0..n).map(|i| self.params.eta[i % old_n]).collect();
        p.gamma = (0..n).map(|i| self.params.gamma[i % old_n].clone()).collect();
        Self::new(p)
    }
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// One draw of every squared fading magnitude in the network.
#[derive(Debug, Clone, PartialEq)]
pub struct FadingRealization {
    /// `|g^m_n|²`, bands × users.
    pub g_sq: BandMatrix,
    /// `|h^m_{n,j}|²` flattened as `[(m * N + n) * K_max + j]`; entries with
    /// `j ≥ K_m` are zero.
    pub h_sq: Vec<f64>,
    num_secondary: usize,
    max_primary: usize,
}

impl FadingRealization {
    pub fn num_bands(&self) -> usize {
        self.g_sq.rows()
    }

    pub fn num_secondary(&self) -> usize {
        self.num_secondary
    }

    pub fn max_primary(&self) -> usize {
        self.max_primary
    }

    pub fn h_sq(&self, m: usize, n: usize, j: usize) -> f64 {
        self.h_sq[(m * self.num_secondary + n) * self.max_primary + j]
    }

    /// Builds a realization from explicit gains (`h_sq[m][n][j]`).
    pub fn from_parts(g_sq: BandMatrix, h_sq: &[Vec<Vec<f64>>]) -> Result<Self> {
        let (bands, users) = (g_sq.rows(), g_sq.cols());
        let max_primary = h_sq
            .first()
            .and_then(|b| b.first())
            .map_or(0, Vec::len);
        let mut flat = Vec::with_capacity(bands * users * max_primary);
        if h_sq.len() != bands {
            return Err(Error::config("h_sq", "band count differs from g_sq"));
        }
        for band in h_sq {
            if band.len() != users {
                return Err(Error::config("h_sq", "user count differs from g_sq"));
            }
            for gains in band {
                if gains.len() != max_primary {
                    return Err(Error::config("h_sq", "ragged interference gains"));
                }
                flat.extend_from_slice(gains);
            }
        }
        Ok(Self {
            g_sq,
            h_sq: flat,
            num_secondary: users,
            max_primary,
        })
    }
}

/// Draws the fading state of trial `trial_index`. Deterministic in
/// `(cfg.seed(), trial_index)`.
pub fn draw_realization(cfg: &NetworkConfig, trial_index: u64) -> FadingRealization {
    let mut rng = stream_rng(cfg.seed(), Stream::Realization(trial_index));
    let (bands, users, kmax) = (cfg.num_bands(), cfg.num_secondary(), cfg.max_primary_count());
    let mut g_sq = BandMatrix::zeros(bands, users);
    let mut h_sq = vec![0.0; bands * users * kmax];
    for m in 0..bands {
        let k = cfg.primary_count(m);
        for n in 0..users {
            g_sq[(m, n)] = Exp1.sample(&mut rng);
            let base = (m * users + n) * kmax;
            for h in &mut h_sq[base..base + k] {
                *h = Exp1.sample(&mut rng);
            }
        }
    }
    FadingRealization {
        g_sq,
        h_sq,
        num_secondary: users,
        max_primary: kmax,
    }
}

#[inline]
fn normalized_sinr(g_sq: f64, inv_snr_eta: f64, ratio: f64, weighted_interference: f64) -> f64 {
    g_sq / (inv_snr_eta + ratio * weighted_interference)
}

/// Draws one SINR sample of user `n` on band `m` without materializing the
/// rest of the network.
pub fn sample_link_sinr<R: Rng + ?Sized>(cfg: &NetworkConfig, m: usize, n: usize, rng: &mut R) -> f64 {
    let g: f64 = Exp1.sample(rng);
    let mut weighted = 0.0;
    for j in 0..cfg.primary_count(m) {
        let h: f64 = Exp1.sample(rng);
        weighted += cfg.relative_gamma(n, j) * h;
    }
    normalized_sinr(g, 1.0 / (cfg.snr() * cfg.eta(n)), cfg.interference_ratio(), weighted)
}

/// SINR values of one realization together with the lower/upper bound tables.
#[derive(Debug, Clone, PartialEq)]
pub struct SinrTable {
    pub sinr: BandMatrix,
    pub s_lower: BandMatrix,
    pub s_upper: BandMatrix,
}

impl SinrTable {
    /// A table with no bound information (bounds equal the SINR). Requires
    /// `1 ≤ M ≤ N` and finite non-negative entries.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let sinr = BandMatrix::from_rows(rows)
            .ok_or_else(|| Error::config("sinr", "rows have different lengths"))?;
        if sinr.rows() == 0 || sinr.cols() < sinr.rows() {
            return Err(Error::config(
                "sinr",
                format!("need 1 <= M <= N, got M={} N={}", sinr.rows(), sinr.cols()),
            ));
        }
        if sinr.as_slice().iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::config("sinr", "entries must be finite and non-negative"));
        }
        Ok(Self {
            s_lower: sinr.clone(),
            s_upper: sinr.clone(),
            sinr,
        })
    }

    pub fn num_bands(&self) -> usize {
        self.sinr.rows()
    }

    pub fn num_users(&self) -> usize {
        self.sinr.cols()
    }

    /// Rate `log2(1 + sinr)` of user `n` on band `m`.
    pub fn rate(&self, m: usize, n: usize) -> f64 {
        (1.0 + self.sinr[(m, n)]).log2()
    }
}

/// Evaluates the SINR table and its bound tables for one realization.
pub fn compute_sinr(cfg: &NetworkConfig, real: &FadingRealization) -> Result<SinrTable> {
    let (bands, users) = (cfg.num_bands(), cfg.num_secondary());
    if real.num_bands() != bands || real.num_secondary() != users {
        return Err(Error::config(
            "realization",
            format!(
                "realization is {}x{}, configuration is {bands}x{users}",
                real.num_bands(),
                real.num_secondary()
            ),
        ));
    }
    if real.max_primary() < cfg.max_primary_count() {
        return Err(Error::config(
            "realization",
            format!(
                "realization carries {} interference gains per link, configuration needs {}",
                real.max_primary(),
                cfg.max_primary_count()
            ),
        ));
    }
    let rho = cfg.snr();
    let ratio = cfg.interference_ratio();
    let inv_lower = 1.0 / (rho * cfg.eta_min());
    let inv_upper = 1.0 / (rho * cfg.eta_max());
    let (gmax, gmin) = (cfg.gamma_ratio_max(), cfg.gamma_ratio_min());

    let mut sinr = BandMatrix::zeros(bands, users);
    let mut s_lower = BandMatrix::zeros(bands, users);
    let mut s_upper = BandMatrix::zeros(bands, users);
    for m in 0..bands {
        let k = cfg.primary_count(m);
        for n in 0..users {
            let g = real.g_sq[(m, n)];
            let (mut exact, mut hi, mut lo) = (0.0, 0.0, 0.0);
            for j in 0..k {
                let h = real.h_sq(m, n, j);
                exact += cfg.relative_gamma(n, j) * h;
                hi += gmax * h;
                lo += gmin * h;
            }
            sinr[(m, n)] = normalized_sinr(g, 1.0 / (rho * cfg.eta(n)), ratio, exact);
            s_lower[(m, n)] = normalized_sinr(g, inv_lower, ratio, hi);
            s_upper[(m, n)] = normalized_sinr(g, inv_upper, ratio, lo);
        }
    }
    Ok(SinrTable {
        sinr,
        s_lower,
        s_upper,
    })
}
