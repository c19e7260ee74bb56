//! Declarative, seeded experiment sweeps with CSV/JSON/plot-script output.
//!
//! A JSON [`ExperimentConfig`] picks an instance family, a sweep axis
//! (piece count `m` or box half-width), a mechanism set, and a budget;
//! [`run_experiment`] replays it deterministically — per-trial substreams
//! make the records independent of thread scheduling — and
//! [`emit_outputs`] persists the rows.

pub mod config;
pub mod output;
pub mod runner;

pub use config::{build_sweep, ExperimentConfig, InstanceKind, Sweepable};
pub use output::{emit_outputs, parse_trials_csv, OutputFormat, SUMMARY_HEADER, TRIALS_HEADER};
pub use runner::{
    run_experiment, run_iteration_study, ExperimentResult, SummaryRow, TrialRecord,
};
