//! Experiment orchestration: configuration, the run loop, metrics and
//! CSV output.

pub mod config;
pub mod experiment;
pub mod metrics;
pub mod output;
pub mod runner;

pub use config::ExperimentConfig;
pub use experiment::{run_cell, run_grid, Ablation, Cell, Mode};
pub use metrics::{aggregate, offline_error, ChangeRecord, RunResult, Summary};
pub use output::emit_metrics;
pub use runner::{run, run_many, DynamicEnvironment};
