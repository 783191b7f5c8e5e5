//! Experiment runner: configuration, seeded trials, recovery metrics, result files,
//! calibration, scaling sweeps and the constants report.
//!
//! A run writes two files into its output directory:
//!
//! * `trials.jsonl`, one [`TrialRecord`] per line in trial order;
//! * `summary.csv`, a header of [`SUMMARY_COLUMNS`] and one row of [`RecoveryMetrics`].
//!
//! Neither file contains timing data, so identical configurations produce identical
//! bytes regardless of the worker count.

mod calibrate;
mod config;
mod report;
mod run;
mod sweep;
mod verify;

pub use calibrate::{calibrate, held_out, recovery_by_threshold, with_threshold, Calibration, CalibrationStep};
pub use config::{Algorithm, ExperimentConfig, LearnerSpec, ModelSpec, SamplerMethod, SamplerSpec};
pub use report::{calc_constants, ConstantsReport, DESK_LIMIT};
pub use run::{
    compare_graphs, run, run_trial, summary_row, trial_inputs, write_outputs, MeanStderr, RecoveryMetrics,
    RunOutput, TrialRecord, TrialSeeds, SUMMARY_COLUMNS,
};
pub use sweep::{fit_loglog_slope, sweep_scaling, SweepConfig, SweepMode, SweepResult, SweepRow};
pub use verify::{verify_battery, Check};

#[cfg(test)]
mod tests;
