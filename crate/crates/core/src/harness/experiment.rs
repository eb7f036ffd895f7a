//! Cells of the (mode, M, max_subsize) experiment grid.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::harness::config::ExperimentConfig;
use crate::harness::metrics::{aggregate, RunResult, Summary};
use crate::harness::runner::run_many;

/// Default grid axes.
pub const GRID_CRADLE_SIZES: [usize; 5] = [10, 30, 50, 70, 100];
pub const GRID_MAX_SUBSIZES: [usize; 5] = [2, 3, 4, 5, 7];

/// Algorithm variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    /// Diversity mechanism disabled.
    Cpso,
    Dcpso,
}

impl Mode {
    pub fn apply(self, config: &ExperimentConfig) -> ExperimentConfig {
        let mut c = config.clone();
        c.diversity.enabled = self == Mode::Dcpso;
        c
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Cpso => "cpso",
            Mode::Dcpso => "dcpso",
        })
    }
}

/// Which variants to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ablation {
    Cpso,
    Dcpso,
    Both,
}

impl Ablation {
    pub fn modes(self) -> &'static [Mode] {
        match self {
            Ablation::Cpso => &[Mode::Cpso],
            Ablation::Dcpso => &[Mode::Dcpso],
            Ablation::Both => &[Mode::Cpso, Mode::Dcpso],
        }
    }
}

impl FromStr for Ablation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cpso" => Ok(Ablation::Cpso),
            "dcpso" => Ok(Ablation::Dcpso),
            "both" => Ok(Ablation::Both),
            other => Err(Error::config("ablation", format!("expected cpso, dcpso or both, got `{other}`"))),
        }
    }
}

/// All runs of one configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub mode: Mode,
    pub cradle_size: usize,
    pub max_subsize: usize,
    pub results: Vec<RunResult>,
    /// `None` when `results` is empty.
    pub summary: Option<Summary>,
}

impl Cell {
    pub fn from_results(mode: Mode, config: &ExperimentConfig, results: Vec<RunResult>) -> Result<Self> {
        let summary = if results.is_empty() { None } else { Some(aggregate(&results)?) };
        Ok(Cell { mode, cradle_size: config.cradle_size, max_subsize: config.max_subsize, results, summary })
    }
}

pub fn run_cell(config: &ExperimentConfig, mode: Mode) -> Result<Cell> {
    let config = mode.apply(config);
    let results = run_many(&config)?;
    Cell::from_results(mode, &config, results)
}

/// Runs every `(mode, M, max_subsize)` combination of the given axes.
pub fn run_grid(
    base: &ExperimentConfig,
    modes: &[Mode],
    cradle_sizes: &[usize],
    max_subsizes: &[usize],
) -> Result<Vec<Cell>> {
    let mut cells = Vec::new();
    for &mode in modes {
        for &m in cradle_sizes {
            for &n in max_subsizes {
                let config = ExperimentConfig { cradle_size: m, max_subsize: n, ..base.clone() };
                config.validate()?;
                cells.push(run_cell(&config, mode)?);
            }
        }
    }
    Ok(cells)
}
