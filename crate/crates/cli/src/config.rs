//! Flat `key = value` configuration documents.
//!
//! One assignment per line, `#` starts a comment, lists are comma separated.
//! Network keys:
//!
//! | key | value |
//! |---|---|
//! | `N`, `M` | population and band count |
//! | `K` | primaries per band, scalar or `M` entries |
//! | `snr_db` | ρ in dB (with `noise_power`, gives `P_s`) |
//! | `pp_over_ps` | `P_p/P_s` as a linear ratio |
//! | `power_secondary`, `power_primary` | linear powers, instead of the two above |
//! | `noise_power` | default 1 |
//! | `eta` | scalar or `N` entries, default 1 |
//! | `gamma` | scalar, `N` entries (one per user) or `N·max(K)` row-major, default 1 |
//! | `seed` | default 0 |
//!
//! Experiment keys: `n_values`, `trials`, `rho_db_values`, `k_values`, `samples`.

use mudiv_core::channel::db_to_linear;
use mudiv_core::{Error as CoreError, NetworkConfig, NetworkParams};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

pub const DEFAULT_TRIALS: usize = 2000;
pub const DEFAULT_SAMPLES: usize = 100_000;
pub const DEFAULT_N_VALUES: [usize; 7] = [10, 20, 50, 100, 200, 500, 1000];
pub const DEFAULT_RHO_DB_VALUES: [f64; 5] = [0.0, 5.0, 10.0, 15.0, 20.0];
pub const DEFAULT_K_VALUES: [usize; 4] = [1, 2, 3, 4];

const KNOWN_KEYS: [&str; 16] = [
    "N",
    "M",
    "K",
    "snr_db",
    "pp_over_ps",
    "power_secondary",
    "power_primary",
    "noise_power",
    "eta",
    "gamma",
    "seed",
    "n_values",
    "trials",
    "rho_db_values",
    "k_values",
    "samples",
];

/// A configuration problem, tagged with the key it concerns.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub key: String,
    pub message: String,
}

impl ConfigError {
    fn new(key: &str, message: impl Into<String>) -> Self {
        Self {
            key: key.to_string(),
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "config key `{}`: {}", self.key, self.message)
    }
}

impl std::error::Error for ConfigError {}

impl From<CoreError> for ConfigError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Config { key, reason } => {
                let key = match key.as_str() {
                    "num_secondary" => "N",
                    "num_bands" => "M",
                    "primary_count" => "K",
                    other => other,
                };
                ConfigError::new(key, reason)
            }
            other => ConfigError::new("config", other.to_string()),
        }
    }
}

/// Network plus experiment settings from one document.
#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub network: NetworkConfig,
    pub n_values: Vec<usize>,
    pub trials: usize,
    pub rho_db_values: Vec<f64>,
    pub k_values: Vec<usize>,
    pub samples: usize,
}

struct Entries(BTreeMap<String, String>);

impl Entries {
    fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut map = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| ConfigError::new("line", format!("line {}: expected `key = value`", i + 1)))?;
            let key = key.trim();
            if !KNOWN_KEYS.contains(&key) {
                return Err(ConfigError::new(key, format!("unknown key on line {}", i + 1)));
            }
            if map.insert(key.to_string(), value.trim().to_string()).is_some() {
                return Err(ConfigError::new(key, "given more than once"));
            }
        }
        Ok(Self(map))
    }

    fn has(&self, key: &str) -> bool {
        self.0.contains_key(key)
    }

    fn list<T: FromStr>(&self, key: &str) -> Result<Option<Vec<T>>, ConfigError> {
        let Some(raw) = self.0.get(key) else {
            return Ok(None);
        };
        raw.split(',')
            .map(|item| {
                let item = item.trim();
                item.parse::<T>()
                    .map_err(|_| ConfigError::new(key, format!("malformed number `{item}`")))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Some)
    }

    fn scalar<T: FromStr>(&self, key: &str) -> Result<Option<T>, ConfigError> {
        match self.list::<T>(key)? {
            None => Ok(None),
            Some(mut v) if v.len() == 1 => Ok(v.pop()),
            Some(v) => Err(ConfigError::new(key, format!("expected one value, got {}", v.len()))),
        }
    }

    fn required<T: FromStr>(&self, key: &str) -> Result<T, ConfigError> {
        self.scalar(key)?.ok_or_else(|| ConfigError::new(key, "missing"))
    }
}

fn exclusive<'a>(e: &Entries, a: &'a str, b: &'a str) -> Result<&'a str, ConfigError> {
    match (e.has(a), e.has(b)) {
        (true, true) => Err(ConfigError::new(b, format!("conflicts with `{a}`"))),
        (false, false) => Err(ConfigError::new(a, format!("missing (or give `{b}`)"))),
        (true, false) => Ok(a),
        (false, true) => Ok(b),
    }
}

fn network(e: &Entries) -> Result<NetworkConfig, ConfigError> {
    let n: usize = e.required("N")?;
    let m: usize = e.required("M")?;
    let k: Vec<usize> = e.list("K")?.ok_or_else(|| ConfigError::new("K", "missing"))?;
    let primary_count = match k.len() {
        1 => vec![k[0]; m],
        len if len == m => k,
        len => return Err(ConfigError::new("K", format!("expected 1 or M={m} entries, got {len}"))),
    };
    let max_k = primary_count.iter().copied().max().unwrap_or(0);

    let noise_power: f64 = e.scalar("noise_power")?.unwrap_or(1.0);
    if !(noise_power.is_finite() && noise_power > 0.0) {
        return Err(ConfigError::new("noise_power", format!("must be finite and > 0, got {noise_power}")));
    }
    let power_secondary = if exclusive(e, "snr_db", "power_secondary")? == "snr_db" {
        let db: f64 = e.required("snr_db")?;
        if !db.is_finite() {
            return Err(ConfigError::new("snr_db", "must be finite"));
        }
        db_to_linear(db) * noise_power
    } else {
        e.required("power_secondary")?
    };
    let power_primary = if exclusive(e, "pp_over_ps", "power_primary")? == "pp_over_ps" {
        let ratio: f64 = e.required("pp_over_ps")?;
        if !(ratio.is_finite() && ratio > 0.0) {
            return Err(ConfigError::new("pp_over_ps", format!("must be finite and > 0, got {ratio}")));
        }
        ratio * power_secondary
    } else {
        e.required("power_primary")?
    };

    let eta = match e.list::<f64>("eta")? {
        None => vec![1.0; n],
        Some(v) if v.len() == 1 => vec![v[0]; n],
        Some(v) if v.len() == n => v,
        Some(v) => return Err(ConfigError::new("eta", format!("expected 1 or N={n} entries, got {}", v.len()))),
    };
    let gamma = match e.list::<f64>("gamma")? {
        None => vec![vec![1.0; max_k]; n],
        Some(v) if v.len() == 1 => vec![vec![v[0]; max_k]; n],
        Some(v) if v.len() == n => v.iter().map(|&g| vec![g; max_k]).collect(),
        Some(v) if max_k > 0 && v.len() == n * max_k => v.chunks(max_k).map(<[f64]>::to_vec).collect(),
        Some(v) => {
            return Err(ConfigError::new(
                "gamma",
                format!("expected 1, N={n} or N·max(K)={} entries, got {}", n * max_k, v.len()),
            ))
        }
    };

    Ok(NetworkConfig::new(NetworkParams {
        num_secondary: n,
        num_bands: m,
        primary_count,
        power_secondary,
        power_primary,
        noise_power,
        eta,
        gamma,
        seed: e.scalar("seed")?.unwrap_or(0),
    })?)
}

/// Parses and validates the network part of a document. Experiment keys
/// are accepted and ignored.
pub fn parse_config(text: &str) -> Result<NetworkConfig, ConfigError> {
    network(&Entries::parse(text)?)
}

pub fn parse_document(text: &str) -> Result<Document, ConfigError> {
    let e = Entries::parse(text)?;
    let network = network(&e)?;
    let positive_count = |key: &str, v: usize| {
        if v == 0 {
            Err(ConfigError::new(key, "must be at least 1"))
        } else {
            Ok(v)
        }
    };
    let rho_db_values = e.list::<f64>("rho_db_values")?.unwrap_or_else(|| DEFAULT_RHO_DB_VALUES.to_vec());
    if rho_db_values.iter().any(|r| !r.is_finite()) {
        return Err(ConfigError::new("rho_db_values", "must be finite"));
    }
    Ok(Document {
        network,
        n_values: e.list("n_values")?.unwrap_or_else(|| DEFAULT_N_VALUES.to_vec()),
        trials: positive_count("trials", e.scalar("trials")?.unwrap_or(DEFAULT_TRIALS))?,
        rho_db_values,
        k_values: e.list("k_values")?.unwrap_or_else(|| DEFAULT_K_VALUES.to_vec()),
        samples: e.scalar("samples")?.unwrap_or(DEFAULT_SAMPLES),
    })
}

fn join<T: fmt::Debug>(values: impl IntoIterator<Item = T>) -> String {
    values.into_iter().map(|v| format!("{v:?}")).collect::<Vec<_>>().join(", ")
}

/// Writes `cfg` with explicit linear powers; [`parse_config`] reads it back
/// to an identical configuration.
pub fn render(cfg: &NetworkConfig) -> String {
    let p = cfg.params();
    let mut out = format!(
        "N = {}\nM = {}\nK = {}\npower_secondary = {:?}\npower_primary = {:?}\nnoise_power = {:?}\neta = {}\n",
        p.num_secondary,
        p.num_bands,
        join(&p.primary_count),
        p.power_secondary,
        p.power_primary,
        p.noise_power,
        join(&p.eta),
    );
    if cfg.max_primary_count() > 0 {
        out += &format!("gamma = {}\n", join(p.gamma.iter().flatten()));
    }
    out += &format!("seed = {}\n", p.seed);
    out
}
