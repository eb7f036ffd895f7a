//! Runs the optimizer with and without the diversity step on a reduced
//! budget and writes the CSV metrics to a directory.
//!
//! ```text
//! cargo run --release --example ablation_run -- out/ablation
//! ```

use std::path::PathBuf;

use dcpso::harness::{emit_metrics, run_cell, ExperimentConfig, Mode};

fn main() -> dcpso::Result<()> {
    let out = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("dcpso-ablation"));

    let config = ExperimentConfig { environments: 20, runs: 5, ..Default::default() };

    let mut cells = Vec::new();
    for mode in [Mode::Cpso, Mode::Dcpso] {
        let cell = run_cell(&config, mode)?;
        if let Some(s) = &cell.summary {
            println!(
                "{mode}: offline error {:.4} (sd {:.4}), peaks found {:.2}, clusters per environment {:.2}",
                s.offline_error_mean, s.offline_error_std, s.peaks_found_mean, s.clusters_generated_mean
            );
        }
        cells.push(cell);
    }
    for path in emit_metrics(&out, &cells)? {
        println!("wrote {}", path.display());
    }
    Ok(())
}
