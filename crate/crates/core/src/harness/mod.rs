//! Monte Carlo experiments: trial aggregation, sweeps over population size,
//! threshold tables, the validation suite and report serialization.

mod report;
mod sweep;
mod trials;
mod validate;

pub use report::{
    aggregates_csv, read_records, threshold_csv, write_aggregates_csv, write_json, write_records,
    write_threshold_csv,
};
pub use sweep::{scaling_sweep, threshold_sweep, ScalingReport, ThresholdRow, ThresholdSweep};
pub use trials::{
    run_trials, run_trials_with, RunOptions, Scheme, TrialAggregate, TrialRecord,
    DEFAULT_WORK_BUDGET,
};
pub use validate::{validate, ValidationCheck, ValidationReport, MIN_VALIDATION_SAMPLES};
