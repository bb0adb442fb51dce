//! Multiuser-diversity spectrum allocation in underlay cognitive networks.
//!
//! `N` secondary transmitter–receiver pairs share `M` spectrum bands with a
//! primary network under Rayleigh fading. The crate provides:
//!
//! - [`channel`]: network configuration, fading draws and SINR tables with
//!   their i.i.d. lower/upper bound tables;
//! - [`analytics`]: bound and exact SINR CDFs, order-statistic CDFs, the
//!   per-link threshold solver and the double-log scaling predictors;
//! - [`centralized`]: the sum-rate-optimal band assignment (exhaustive
//!   reference and Hungarian matching);
//! - [`distributed`]: the threshold-based distributed allocation with
//!   backoff contention;
//! - [`harness`]: seeded Monte Carlo runs, population sweeps, the validation
//!   suite and CSV/JSON reports.

pub mod analytics;
pub mod centralized;
pub mod channel;
pub mod distributed;
mod error;
pub mod harness;
mod matrix;
pub mod rng;
pub mod stats;

pub use analytics::{ThresholdTable, CdfKind};
pub use centralized::Assignment;
pub use channel::{FadingRealization, NetworkConfig, NetworkParams, SinrTable};
pub use distributed::{AllocationOutcome, CandidateSets};
pub use error::{Error, Result};
pub use harness::{ScalingReport, Scheme, TrialAggregate};
pub use matrix::BandMatrix;
