//! Relocation of the worst cluster.
//!
//! The cluster with the lowest local best is treated as wasted effort. A new
//! candidate is assembled by walking its local best through the dimensions
//! of every other cluster's local best, keeping each swap that helps, and
//! the worst cluster is then moved onto the result.

use std::collections::HashMap;

use rand::Rng;

use crate::geometry::Bounds;
use crate::objective::Objective;
use crate::swarm::{Cluster, Solution};

/// Recurrence counts of candidate positions, quantized to one decimal.
#[derive(Debug, Clone, Default)]
pub struct ConfidenceTable {
    counts: HashMap<Vec<i64>, u32>,
}

impl ConfidenceTable {
    fn key(position: &[f64]) -> Vec<i64> {
        position.iter().map(|x| (x * 10.0).round() as i64).collect()
    }

    /// Records a sighting of `position`; true once it has been seen at
    /// least twice.
    pub fn observe(&mut self, position: &[f64]) -> bool {
        let count = self.counts.entry(Self::key(position)).or_insert(0);
        *count += 1;
        *count >= 2
    }

    pub fn count(&self, position: &[f64]) -> u32 {
        self.counts.get(&Self::key(position)).copied().unwrap_or(0)
    }

    pub fn clear(&mut self) {
        self.counts.clear();
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

/// Index of the cluster with the lowest local best (first on ties), or
/// `None` when there are fewer than two clusters.
pub fn select_worst_cluster(clusters: &[Cluster]) -> Option<usize> {
    if clusters.len() < 2 {
        return None;
    }
    let mut worst = 0;
    for (i, c) in clusters.iter().enumerate().skip(1) {
        if c.lbest_fitness < clusters[worst].lbest_fitness {
            worst = i;
        }
    }
    Some(worst)
}

/// For each dimension, then each donor, tries the donor's coordinate in
/// place of the current one and keeps strict improvements. Costs
/// `D * donors.len()` evaluations.
pub fn recombine_best_dimensions<O: Objective + ?Sized>(
    worst: &Solution,
    donors: &[Solution],
    objective: &mut O,
) -> Solution {
    let mut current = worst.clone();
    let mut trial = current.position.clone();
    for d in 0..current.position.len() {
        for donor in donors {
            trial[d] = donor.position[d];
            let fitness = objective.eval(&trial);
            if fitness > current.fitness {
                current.position[d] = trial[d];
                current.fitness = fitness;
            } else {
                trial[d] = current.position[d];
            }
        }
    }
    current
}

/// Moves every member of `cluster` to `target`, jittered uniformly by up to
/// `spread` per dimension and clamped to `bounds`. Velocities are zeroed and
/// personal bests restart at the new positions (one evaluation each).
pub fn relocate_cluster<R, O>(
    cluster: &mut Cluster,
    target: &Solution,
    spread: f64,
    bounds: Bounds,
    rng: &mut R,
    objective: &mut O,
) where
    R: Rng + ?Sized,
    O: Objective + ?Sized,
{
    cluster.lbest_position.clone_from(&target.position);
    cluster.lbest_fitness = target.fitness;
    cluster.iterations = 0;
    for member in &mut cluster.members {
        for (x, &t) in member.position.iter_mut().zip(&target.position) {
            let jitter = if spread > 0.0 { rng.random_range(-spread..=spread) } else { 0.0 };
            *x = bounds.clamp(t + jitter);
        }
        member.velocity.iter_mut().for_each(|v| *v = 0.0);
        member.pbest_fitness = objective.eval(&member.position);
        member.pbest_position.clone_from(&member.position);
    }
}

/// Diversity mechanism settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Diversity {
    pub enabled: bool,
    pub confidence: bool,
    pub spread: f64,
    /// Run the mechanism on every `interval`-th optimizer iteration.
    pub interval: usize,
}

impl Default for Diversity {
    fn default() -> Self {
        Diversity { enabled: true, confidence: false, spread: 0.5, interval: 5 }
    }
}

/// What one invocation of [`explore_area`] did.
#[derive(Debug, Clone, PartialEq)]
pub enum Exploration {
    /// Disabled, or fewer than two clusters.
    Skipped,
    /// Recombination ran but the worst cluster stayed put.
    Kept {
        worst: usize,
    },
    Relocated {
        worst: usize,
        target: Solution,
    },
}

/// Runs the full mechanism once on `clusters`. Relocation happens only when
/// recombination strictly improved the worst local best and, with
/// confidence gating on, the new position has been produced before.
pub fn explore_area<R, O>(
    clusters: &mut [Cluster],
    settings: &Diversity,
    table: &mut ConfidenceTable,
    bounds: Bounds,
    rng: &mut R,
    objective: &mut O,
) -> Exploration
where
    R: Rng + ?Sized,
    O: Objective + ?Sized,
{
    if !settings.enabled {
        return Exploration::Skipped;
    }
    let Some(worst) = select_worst_cluster(clusters) else {
        return Exploration::Skipped;
    };
    let donors: Vec<Solution> =
        clusters.iter().enumerate().filter(|&(i, _)| i != worst).map(|(_, c)| c.lbest()).collect();
    let start = clusters[worst].lbest();
    let target = recombine_best_dimensions(&start, &donors, objective);
    if target.fitness <= start.fitness {
        return Exploration::Kept { worst };
    }
    if settings.confidence && !table.observe(&target.position) {
        return Exploration::Kept { worst };
    }
    relocate_cluster(&mut clusters[worst], &target, settings.spread, bounds, rng, objective);
    Exploration::Relocated { worst, target }
}
