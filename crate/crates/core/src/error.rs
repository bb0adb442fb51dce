use thiserror::Error;

/// Errors raised by the simulator and the analytic toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A configuration value is missing, malformed or violates an invariant.
    #[error("invalid configuration `{key}`: {reason}")]
    Config { key: String, reason: String },

    /// An argument lies outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    /// Exhaustive search was asked to enumerate too many arrangements.
    #[error(
        "exhaustive search supports at most {max_users} users and {max_bands} bands \
         (got N={users}, M={bands}); use the matching solver instead"
    )]
    Capacity {
        users: usize,
        bands: usize,
        max_users: usize,
        max_bands: usize,
    },

    /// A caller broke an operation's precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    /// The requested experiment exceeds the configured work budget.
    #[error("work budget exceeded: {requested} > {budget} (N·M·trials)")]
    Budget { requested: u128, budget: u128 },

    #[error("i/o error on {path}: {reason}")]
    Io { path: String, reason: String },
}

impl Error {
    pub(crate) fn config(key: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Config {
            key: key.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
