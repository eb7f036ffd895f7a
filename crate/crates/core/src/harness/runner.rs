//! The optimizer loop driven against a changing landscape.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::diversity::{explore_area, ConfidenceTable};
use crate::error::Result;
use crate::harness::config::ExperimentConfig;
use crate::harness::metrics::{offline_error, ChangeRecord, RunResult};
use crate::mpb::{Landscape, Probe};
use crate::objective::Objective;
use crate::population::{
    apply_convergence_check, apply_overcrowd_check, apply_overlap_check, detect_change, rebuild_after_change,
    repopulate_if_empty, Archive, Cradle,
};
use crate::swarm::{inertia, learn_lbest_dimensionwise, remaining_iterations, step_particle, Cluster};

const LANDSCAPE_STREAM: u64 = 0;
const ALGORITHM_STREAM: u64 = 1;

/// Generator for one of the two independent streams of a run.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// An environment that ended but whose record still needs the optimizer's
/// view (found peaks, cluster counts).
#[derive(Debug, Clone)]
struct ClosedEnvironment {
    index: usize,
    best_found: f64,
    optimum: f64,
    evaluations_used: u64,
    landscape: Landscape,
}

/// The landscape behind a budget clock. The landscape advances right
/// before the first evaluation past each `change_frequency` boundary, so
/// every environment receives exactly `change_frequency` evaluations.
#[derive(Debug, Clone)]
pub struct DynamicEnvironment {
    landscape: Landscape,
    change_frequency: u64,
    environments: usize,
    index: usize,
    evals_in_env: u64,
    best_in_env: f64,
    closed: Vec<ClosedEnvironment>,
    finished: bool,
}

impl DynamicEnvironment {
    pub fn new(landscape: Landscape, change_frequency: u64, environments: usize) -> Self {
        DynamicEnvironment {
            landscape,
            change_frequency,
            environments,
            index: 0,
            evals_in_env: 0,
            best_in_env: f64::NEG_INFINITY,
            closed: Vec::new(),
            finished: false,
        }
    }

    pub fn landscape(&self) -> &Landscape {
        &self.landscape
    }

    /// Zero-based index of the running environment.
    pub fn environment_index(&self) -> usize {
        self.index
    }

    pub fn evaluations_in_environment(&self) -> u64 {
        self.evals_in_env
    }

    /// True once the last environment has used its budget.
    pub fn finished(&self) -> bool {
        self.finished
    }

    fn close_environment(&mut self) {
        let (_, optimum) = self.landscape.current_optimum();
        self.closed.push(ClosedEnvironment {
            index: self.index,
            best_found: self.best_in_env,
            optimum,
            evaluations_used: self.evals_in_env,
            landscape: self.landscape.clone(),
        });
        if self.index + 1 == self.environments {
            self.finished = true;
        } else {
            self.landscape.advance();
            self.index += 1;
            self.evals_in_env = 0;
            self.best_in_env = f64::NEG_INFINITY;
        }
    }
}

impl Objective for DynamicEnvironment {
    fn eval(&mut self, x: &[f64]) -> f64 {
        if !self.finished && self.evals_in_env == self.change_frequency {
            self.close_environment();
        }
        let value = self.landscape.eval(x);
        if !self.finished {
            self.evals_in_env += 1;
            self.best_in_env = self.best_in_env.max(value);
        }
        value
    }

    fn evaluations(&self) -> u64 {
        self.landscape.evaluations()
    }
}

/// Optimizer state for one run.
struct Optimizer<'a> {
    config: &'a ExperimentConfig,
    cradle: Cradle,
    clusters: Vec<Cluster>,
    archive: Archive,
    confidence: ConfidenceTable,
    rng: ChaCha8Rng,
    /// Environments the optimizer has detected so far.
    environment: u64,
    generated: usize,
    /// Environment index the swarm was last rebuilt for.
    synced_index: usize,
    iteration: usize,
    lag: usize,
    detection_misses: usize,
}

impl<'a> Optimizer<'a> {
    fn new(config: &'a ExperimentConfig, rng: ChaCha8Rng) -> Self {
        let cradle = Cradle {
            size: config.cradle_size,
            max_subsize: config.max_subsize,
            dims: config.mpb.dims,
            bounds: config.mpb.bounds,
        };
        Optimizer {
            config,
            cradle,
            clusters: Vec::new(),
            archive: Archive::default(),
            confidence: ConfidenceTable::default(),
            rng,
            environment: 0,
            generated: 0,
            synced_index: 0,
            iteration: 0,
            lag: 0,
            detection_misses: 0,
        }
    }

    fn population(&self) -> usize {
        self.clusters.iter().map(Cluster::len).sum()
    }

    fn pso_pass(&mut self, env: &mut DynamicEnvironment) -> Result<()> {
        let config = self.config;
        let p_size = self.population().max(1);
        let r_itr = remaining_iterations(config.change_frequency, env.evaluations_in_environment(), p_size)?;
        let bounds = config.mpb.bounds;
        for cluster in &mut self.clusters {
            let w = inertia(config.pso.w_max, config.pso.w_min, cluster.iterations.min(r_itr), r_itr)?;
            let mut learned = 0usize;
            for m in 0..cluster.members.len() {
                let Cluster { members, lbest_position, .. } = cluster;
                let particle = &mut members[m];
                step_particle(particle, lbest_position, w, &config.pso, bounds, &mut self.rng);
                let fitness = env.eval(&particle.position);
                if particle.update_pbest(fitness) {
                    let candidate = particle.pbest_position.clone();
                    if config.learn_cap.is_none_or(|cap| learned < cap) {
                        learn_lbest_dimensionwise(cluster, &candidate, env);
                        learned += 1;
                    }
                    cluster.offer(&candidate, fitness);
                }
            }
            cluster.iterations += 1;
        }
        Ok(())
    }

    fn iterate(&mut self, env: &mut DynamicEnvironment) -> Result<()> {
        let config = self.config;
        self.pso_pass(env)?;
        if self.iteration.is_multiple_of(config.diversity.interval) {
            explore_area(
                &mut self.clusters,
                &config.diversity,
                &mut self.confidence,
                config.mpb.bounds,
                &mut self.rng,
                env,
            );
        }
        self.iteration += 1;
        apply_overlap_check(&mut self.clusters, config.r_overlap, config.overlap_rule);
        for c in &mut self.clusters {
            apply_overcrowd_check(c, config.max_subsize);
        }
        apply_convergence_check(&mut self.clusters, config.eps_conv, &mut self.archive, self.environment);
        self.generated += repopulate_if_empty(&mut self.clusters, &self.cradle, &mut self.rng, env)?;
        Ok(())
    }

    fn probes(&self) -> Vec<Probe> {
        let eps = self.config.eps_peak;
        let mut probes: Vec<Probe> = self
            .clusters
            .iter()
            .map(|c| {
                let (center, radius) = c.geometry();
                Probe { center, radius: radius.max(eps) }
            })
            .collect();
        probes.extend(
            self.archive.in_environment(self.environment).map(|e| Probe { center: e.position.clone(), radius: eps }),
        );
        probes
    }

    fn record(&mut self, closed: ClosedEnvironment) -> ChangeRecord {
        let record = ChangeRecord {
            environment_index: closed.index,
            best_found: closed.best_found,
            optimum: closed.optimum,
            peaks_found: closed.landscape.peaks_found(&self.probes()),
            clusters_generated: self.generated,
            survived_clusters: self.clusters.len() + self.archive.in_environment(self.environment).count(),
            evaluations_used: closed.evaluations_used,
        };
        self.generated = 0;
        record
    }

    /// Runs change detection. A change still unnoticed after one full
    /// iteration is handled anyway and counted as a detection miss.
    fn respond_to_change(&mut self, env: &mut DynamicEnvironment) -> Result<()> {
        let detected = detect_change(&self.clusters, env);
        let pending = env.environment_index() > self.synced_index;
        if !detected && pending {
            self.lag += 1;
            if self.lag > 1 {
                self.detection_misses += 1;
            }
        }
        if detected || (pending && self.lag > 1) {
            let clusters = std::mem::take(&mut self.clusters);
            self.clusters =
                rebuild_after_change(clusters, &mut self.archive, self.environment, &self.cradle, &mut self.rng, env)?;
            self.generated += self.clusters.len();
            self.environment += 1;
            self.confidence.clear();
            self.synced_index = env.environment_index();
            self.lag = 0;
        }
        Ok(())
    }
}

/// Runs the optimizer for `config.environments` environments with `seed`.
pub fn run(config: &ExperimentConfig, seed: u64) -> Result<RunResult> {
    config.validate()?;
    let landscape = Landscape::with_rng(config.mpb.clone(), stream_rng(seed, LANDSCAPE_STREAM))?;
    let mut env = DynamicEnvironment::new(landscape, config.change_frequency, config.environments);
    let mut opt = Optimizer::new(config, stream_rng(seed, ALGORITHM_STREAM));
    opt.generated += repopulate_if_empty(&mut opt.clusters, &opt.cradle, &mut opt.rng, &mut env)?;

    let mut records = Vec::with_capacity(config.environments);
    while !env.finished() {
        opt.iterate(&mut env)?;
        for c in std::mem::take(&mut env.closed) {
            records.push(opt.record(c));
        }
        if !env.finished() {
            opt.respond_to_change(&mut env)?;
        }
    }
    let offline_error = offline_error(&records)?;
    Ok(RunResult { seed, records, offline_error, detection_misses: opt.detection_misses })
}

/// Runs `config.runs` independent runs with seeds `base_seed + i`, in
/// parallel, returned in run order.
pub fn run_many(config: &ExperimentConfig) -> Result<Vec<RunResult>> {
    config.validate()?;
    (0..config.runs as u64).into_par_iter().map(|i| run(config, config.base_seed + i)).collect()
}
