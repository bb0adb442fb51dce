//! Closed-form CDFs, order statistics, the threshold solver and the
//! asymptotic scaling predictors.

mod cdf;
mod order_stats;
mod quadrature;
mod scaling;
mod threshold;

pub use cdf::{cdf_exact, cdf_lower, cdf_upper, CdfKind, CdfTag};
pub use order_stats::{order_stat_cdf, partial_binomial_sum};
pub use quadrature::integrate;
pub use scaling::{
    expected_log_max, harmonic_bracket, harmonic_moments, EULER_MASCHERONI,
};
pub use threshold::{build_threshold_table, solve_threshold, ThresholdTable, THRESHOLD_TOLERANCE};
