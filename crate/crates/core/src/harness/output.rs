//! CSV emission.
//!
//! Files written by [`emit_metrics`] into the output directory:
//!
//! * `changes_<mode>_M<m>_N<n>.csv`, one per cell, one row per environment:
//!   `run_seed,environment_index,h_n,f_n,error,peaks_found,clusters_generated,survived_clusters`
//! * `summary.csv`, one row per cell:
//!   `mode,M,max_subsize,runs,offline_error_mean,offline_error_std,peaks_found_mean,clusters_generated_mean,survived_clusters_mean`
//! * `plot_offline_error.csv`, mean offline error against `M` with one
//!   series per `(mode, max_subsize)`: `series,x,y`
//!
//! Floats are written in shortest round-trip form.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::harness::experiment::Cell;
use crate::harness::metrics::RunResult;

pub const CHANGES_HEADER: [&str; 8] =
    ["run_seed", "environment_index", "h_n", "f_n", "error", "peaks_found", "clusters_generated", "survived_clusters"];

pub const SUMMARY_HEADER: [&str; 9] = [
    "mode",
    "M",
    "max_subsize",
    "runs",
    "offline_error_mean",
    "offline_error_std",
    "peaks_found_mean",
    "clusters_generated_mean",
    "survived_clusters_mean",
];

pub const PLOT_HEADER: [&str; 3] = ["series", "x", "y"];

fn writer(path: &Path) -> Result<csv::Writer<fs::File>> {
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    Ok(csv::Writer::from_writer(file))
}

fn csv_err(path: &Path, e: csv::Error) -> Error {
    Error::io(path, std::io::Error::other(e))
}

fn write_rows<I>(path: &Path, header: &[&str], rows: I) -> Result<()>
where
    I: IntoIterator<Item = Vec<String>>,
{
    let mut w = writer(path)?;
    w.write_record(header).map_err(|e| csv_err(path, e))?;
    for row in rows {
        w.write_record(&row).map_err(|e| csv_err(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Writes the per-environment CSV for `results`.
pub fn write_changes(path: &Path, results: &[RunResult]) -> Result<()> {
    let rows = results.iter().flat_map(|run| {
        run.records.iter().map(move |r| {
            vec![
                run.seed.to_string(),
                r.environment_index.to_string(),
                r.best_found.to_string(),
                r.optimum.to_string(),
                r.error().to_string(),
                r.peaks_found.to_string(),
                r.clusters_generated.to_string(),
                r.survived_clusters.to_string(),
            ]
        })
    });
    write_rows(path, &CHANGES_HEADER, rows)
}

/// Writes one summary row per cell that has at least one run.
pub fn write_summary(path: &Path, cells: &[Cell]) -> Result<()> {
    let rows = cells.iter().filter_map(|cell| {
        let s = cell.summary.as_ref()?;
        Some(vec![
            cell.mode.to_string(),
            cell.cradle_size.to_string(),
            cell.max_subsize.to_string(),
            s.runs.to_string(),
            s.offline_error_mean.to_string(),
            s.offline_error_std.to_string(),
            s.peaks_found_mean.to_string(),
            s.clusters_generated_mean.to_string(),
            s.survived_clusters_mean.to_string(),
        ])
    });
    write_rows(path, &SUMMARY_HEADER, rows)
}

/// Offline error against cradle size, one series per (mode, max_subsize).
pub fn write_plot_data(path: &Path, cells: &[Cell]) -> Result<()> {
    let mut sorted: Vec<&Cell> = cells.iter().filter(|c| c.summary.is_some()).collect();
    sorted.sort_by_key(|c| (c.mode, c.max_subsize, c.cradle_size));
    let rows = sorted.into_iter().map(|c| {
        vec![
            format!("{} N={}", c.mode, c.max_subsize),
            c.cradle_size.to_string(),
            c.summary.as_ref().map(|s| s.offline_error_mean).unwrap_or(f64::NAN).to_string(),
        ]
    });
    write_rows(path, &PLOT_HEADER, rows)
}

pub fn changes_file_name(cell: &Cell) -> String {
    format!("changes_{}_M{}_N{}.csv", cell.mode, cell.cradle_size, cell.max_subsize)
}

/// Writes every metrics file for `cells` into `dir`, creating it if needed.
/// Returns the paths written.
pub fn emit_metrics(dir: &Path, cells: &[Cell]) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut written = Vec::new();
    for cell in cells {
        let path = dir.join(changes_file_name(cell));
        write_changes(&path, &cell.results)?;
        written.push(path);
    }
    let summary = dir.join("summary.csv");
    write_summary(&summary, cells)?;
    written.push(summary);
    let plot = dir.join("plot_offline_error.csv");
    write_plot_data(&plot, cells)?;
    written.push(plot);
    Ok(written)
}
