//! Acceptance suite. Prints one `[PASS]`/`[FAIL]` line per criterion and
//! exits non-zero if any criterion fails.

mod common;

use std::fs;
use std::process::{Command, ExitCode};

use common::{as_index_groups, brute_force_clustering, particles, random_points, rng};
use dcpso::clustering::cluster_population;
use dcpso::diversity::recombine_best_dimensions;
use dcpso::geometry::norm;
use dcpso::harness::{offline_error, run_cell, Cell, ExperimentConfig, Mode, RunResult};
use dcpso::mpb::{Landscape, MpbSettings};
use dcpso::objective::Counted;
use dcpso::swarm::{learn_lbest_dimensionwise, Cluster, Particle, Solution};
use rand::Rng;

const RUNS: usize = 30;
const BASE_SEED: u64 = 1;

const MAX_OFFLINE_ERROR: f64 = 2.0;
const MIN_PEAKS_FOUND_N2: f64 = 6.0;
const CLUSTERS_RANGE: (f64, f64) = (70.0 / 3.0, 70.0 / 2.0);
const ORACLE_INSTANCES: u64 = 1000;
const MPB_ADVANCES: usize = 10_000;
const SHIFT_TOLERANCE: f64 = 1e-9;
const MONOTONE_TRIALS: usize = 100_000;

struct Report {
    failures: usize,
}

impl Report {
    fn check(&mut self, id: u32, name: &str, pass: bool, detail: String) {
        let tag = if pass { "PASS" } else { "FAIL" };
        println!("[{tag}] {id:>2} {name}: {detail}");
        if !pass {
            self.failures += 1;
        }
    }
}

fn cell(mode: Mode, m: usize, n: usize) -> Cell {
    let config =
        ExperimentConfig { cradle_size: m, max_subsize: n, runs: RUNS, base_seed: BASE_SEED, ..Default::default() };
    run_cell(&config, mode).expect("acceptance run")
}

fn mean(results: &[RunResult], f: impl Fn(&RunResult) -> f64) -> f64 {
    results.iter().map(f).sum::<f64>() / results.len() as f64
}

fn main() -> ExitCode {
    let mut report = Report { failures: 0 };

    let main_cell = cell(Mode::Dcpso, 70, 3);
    let m10 = cell(Mode::Dcpso, 10, 3);
    let m30 = cell(Mode::Dcpso, 30, 3);
    let n2 = cell(Mode::Dcpso, 70, 2);
    let cpso = cell(Mode::Cpso, 70, 3);
    let err = |c: &Cell| mean(&c.results, |r| r.offline_error);
    let peaks = |c: &Cell| mean(&c.results, RunResult::mean_peaks_found);

    let e70 = err(&main_cell);
    report.check(1, "offline error M=70 N=3", e70 <= MAX_OFFLINE_ERROR, format!("{e70:.4} <= {MAX_OFFLINE_ERROR}"));

    let (e10, e30) = (err(&m10), err(&m30));
    report.check(
        2,
        "offline error falls with M at N=3",
        e10 > e30 && e30 > e70,
        format!("M10 {e10:.4} > M30 {e30:.4} > M70 {e70:.4}"),
    );

    let p2 = peaks(&n2);
    report.check(3, "peaks found M=70 N=2", p2 >= MIN_PEAKS_FOUND_N2, format!("{p2:.3} >= {MIN_PEAKS_FOUND_N2}"));

    let clusters = mean(&main_cell.results, RunResult::mean_clusters_generated);
    report.check(
        4,
        "clusters generated M=70 N=3",
        (CLUSTERS_RANGE.0..=CLUSTERS_RANGE.1).contains(&clusters),
        format!("{clusters:.3} in [{:.3}, {:.3}]", CLUSTERS_RANGE.0, CLUSTERS_RANGE.1),
    );

    let (ec, pd, pc) = (err(&cpso), peaks(&main_cell), peaks(&cpso));
    report.check(
        5,
        "diversity on vs off",
        e70 <= ec && pd >= pc,
        format!("error {e70:.4} <= {ec:.4}, peaks {pd:.3} >= {pc:.3}"),
    );

    let mut mismatches = 0;
    for seed in 0..ORACLE_INSTANCES {
        let mut r = rng(seed);
        let n = r.random_range(1..=8);
        let dims = r.random_range(1..=4);
        let max_subsize = r.random_range(2..=5);
        let points = random_points(&mut r, n, dims, 100.0);
        let got = cluster_population(particles(&points), max_subsize).expect("clustering");
        if as_index_groups(&points, &got) != brute_force_clustering(&points, max_subsize) {
            mismatches += 1;
        }
    }
    report.check(
        6,
        "clustering matches brute-force oracle",
        mismatches == 0,
        format!("{mismatches} mismatches in {ORACLE_INSTANCES} instances"),
    );

    let settings = MpbSettings::default();
    let mut landscape = Landscape::new(settings.clone(), BASE_SEED).expect("landscape");
    let (mut range_violations, mut worst_shift) = (0usize, 0.0f64);
    for _ in 0..MPB_ADVANCES {
        landscape.advance();
        for p in landscape.peaks() {
            let ok = (30.0..=70.0).contains(&p.height)
                && (1.0..=12.0).contains(&p.width)
                && settings.bounds.contains(&p.location);
            range_violations += usize::from(!ok);
            worst_shift = worst_shift.max((norm(&p.velocity) - 1.0).abs());
        }
    }
    report.check(
        7,
        "landscape invariants",
        range_violations == 0 && worst_shift <= SHIFT_TOLERANCE,
        format!("{range_violations} range violations, max |shift - 1| = {worst_shift:.2e}"),
    );

    let all = [&main_cell, &m10, &m30, &n2, &cpso];
    let (mut bad_error, mut bad_best, mut bad_budget) = (0, 0, 0);
    for c in all {
        let slack = c.cradle_size as u64;
        let u_cf = ExperimentConfig::default().change_frequency;
        for r in &c.results {
            bad_error += usize::from(!(0.0..).contains(&offline_error(&r.records).expect("records")));
            for rec in &r.records {
                bad_best += usize::from(rec.best_found > rec.optimum);
                bad_budget += usize::from(!(u_cf - slack..=u_cf + slack).contains(&rec.evaluations_used));
            }
        }
    }
    report.check(
        8,
        "metric identities",
        bad_error + bad_best + bad_budget == 0,
        format!("negative error {bad_error}, best above optimum {bad_best}, budget outside U_cf ± M {bad_budget}"),
    );

    let identical = cli_outputs_identical();
    report.check(9, "byte-identical CSV across invocations", identical.is_ok(), identical.unwrap_or_else(|e| e));

    let decreases = monotonicity_trials();
    report.check(
        10,
        "learning and recombination never lose fitness",
        decreases == 0,
        format!("{decreases} decreases in {MONOTONE_TRIALS} trials"),
    );

    if report.failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{} criteria failed", report.failures);
        ExitCode::FAILURE
    }
}

fn cli_outputs_identical() -> Result<String, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let config = dir.path().join("det.toml");
    fs::write(&config, "n_environments = 20\nruns = 4\n").map_err(|e| e.to_string())?;
    let mut outputs = Vec::new();
    for name in ["a", "b"] {
        let out = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_dcpso"))
            .args(["run", "--ablation", "both", "--seed", "11", "--config"])
            .arg(&config)
            .arg("--out")
            .arg(&out)
            .output()
            .map_err(|e| e.to_string())?;
        if !status.status.success() {
            return Err(format!("cli exited with {:?}", status.status.code()));
        }
        let mut files: Vec<_> = fs::read_dir(&out)
            .map_err(|e| e.to_string())?
            .map(|e| e.map(|e| e.path()))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        files.sort();
        let contents: Vec<(String, Vec<u8>)> = files
            .iter()
            .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(p).unwrap()))
            .collect();
        outputs.push(contents);
    }
    if outputs[0] == outputs[1] {
        Ok(format!("{} files compared", outputs[0].len()))
    } else {
        Err("outputs differ".into())
    }
}

fn monotonicity_trials() -> usize {
    let mut r = rng(2024);
    let mut decreases = 0;
    for trial in 0..MONOTONE_TRIALS {
        let dims = r.random_range(1..=6);
        let on_mpb = trial % 2 == 1;
        let mut landscape =
            Landscape::new(MpbSettings { dims, ..Default::default() }, trial as u64).expect("landscape");
        let weights: Vec<f64> = (0..dims).map(|_| r.random_range(0.1..5.0)).collect();
        let centers: Vec<f64> = (0..dims).map(|_| r.random_range(0.0..100.0)).collect();
        let separable = |x: &[f64]| -> f64 {
            x.iter()
                .zip(&weights)
                .zip(&centers)
                .map(|((v, w), c)| -w * ((v - c) / 10.0).powi(2) + (v / 3.0).cos())
                .sum()
        };
        let mut f = |x: &[f64]| if on_mpb { landscape.evaluate(x).expect("eval") } else { separable(x) };

        let points = random_points(&mut r, 4, dims, 100.0);
        if trial % 4 < 2 {
            let start = f(&points[0]);
            let mut obj = Counted::new(&mut f);
            let mut cluster = Cluster::new(vec![Particle::at_rest(points[0].clone(), start)]);
            learn_lbest_dimensionwise(&mut cluster, &points[1], &mut obj);
            decreases += usize::from(cluster.lbest_fitness < start);
        } else {
            let sols: Vec<Solution> = points.iter().map(|p| Solution { position: p.clone(), fitness: f(p) }).collect();
            let out = recombine_best_dimensions(&sols[0], &sols[1..], &mut Counted::new(&mut f));
            decreases += usize::from(out.fitness < sols[0].fitness);
        }
    }
    decreases
}
