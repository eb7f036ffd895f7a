//! Command-line front end for running experiments.
//!
//! Exit codes: 0 success, 2 configuration error, 3 I/O error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use dcpso::harness::experiment::{GRID_CRADLE_SIZES, GRID_MAX_SUBSIZES};
use dcpso::harness::{emit_metrics, run_cell, run_grid, Ablation, ExperimentConfig};
use dcpso::Error;

#[derive(Parser)]
#[command(name = "dcpso", version, about = "Clustering PSO experiments on the Moving Peaks Benchmark")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one configuration and write its metrics.
    Run(Common),
    /// Sweep cradle size M against max_subsize N.
    Grid {
        #[command(flatten)]
        common: Common,
        /// Cradle sizes to sweep.
        #[arg(long = "m", value_delimiter = ',', default_values_t = GRID_CRADLE_SIZES)]
        cradle_sizes: Vec<usize>,
        /// Max sub-swarm sizes to sweep.
        #[arg(long = "n", value_delimiter = ',', default_values_t = GRID_MAX_SUBSIZES)]
        max_subsizes: Vec<usize>,
    },
}

#[derive(Args)]
struct Common {
    /// Configuration file (flat TOML). Defaults apply when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Base seed, overriding the config.
    #[arg(long)]
    seed: Option<u64>,
    /// Number of runs, overriding the config.
    #[arg(long)]
    runs: Option<usize>,
    /// Which variant to run: cpso, dcpso or both.
    #[arg(long, default_value = "dcpso")]
    ablation: String,
}

impl Common {
    fn load(&self) -> dcpso::Result<(ExperimentConfig, Ablation)> {
        let mut config = match &self.config {
            Some(path) => ExperimentConfig::from_file(path).map_err(|e| match e {
                Error::Io { path, source } if source.kind() == std::io::ErrorKind::NotFound => {
                    Error::Config { key: "--config".into(), message: format!("no such file {}", path.display()) }
                }
                other => other,
            })?,
            None => ExperimentConfig::default(),
        };
        if let Some(seed) = self.seed {
            config.base_seed = seed;
        }
        if let Some(runs) = self.runs {
            config.runs = runs;
        }
        config.validate()?;
        Ok((config, self.ablation.parse()?))
    }
}

fn execute(cli: Cli) -> dcpso::Result<()> {
    let (common, cells) = match cli.command {
        Command::Run(common) => {
            let (config, ablation) = common.load()?;
            let cells =
                ablation.modes().iter().map(|&mode| run_cell(&config, mode)).collect::<dcpso::Result<Vec<_>>>()?;
            (common, cells)
        }
        Command::Grid { common, cradle_sizes, max_subsizes } => {
            let (config, ablation) = common.load()?;
            let cells = run_grid(&config, ablation.modes(), &cradle_sizes, &max_subsizes)?;
            (common, cells)
        }
    };
    for cell in &cells {
        if let Some(s) = &cell.summary {
            println!(
                "{} M={} N={}: offline error {:.4} ± {:.4}, peaks found {:.2}, clusters {:.2}, survived {:.2}",
                cell.mode,
                cell.cradle_size,
                cell.max_subsize,
                s.offline_error_mean,
                s.offline_error_std,
                s.peaks_found_mean,
                s.clusters_generated_mean,
                s.survived_clusters_mean
            );
        }
    }
    for path in emit_metrics(&common.out, &cells)? {
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Io { .. } => ExitCode::from(3),
                Error::Config { .. } | Error::Contract(_) => ExitCode::from(2),
            }
        }
    }
}
