//! Redundancy control and lifecycle management for the cluster list:
//! overlap merging, overcrowding trim, convergence archiving,
//! repopulation, change detection and the post-change rebuild.

use rand::Rng;

use crate::clustering::cluster_population;
use crate::error::Result;
use crate::geometry::{distance, Bounds};
use crate::objective::Objective;
use crate::swarm::{Cluster, Particle};

/// Absolute fitness difference that counts as an environment change.
pub const CHANGE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct ArchiveEntry {
    pub position: Vec<f64>,
    pub fitness: f64,
    pub environment: u64,
}

/// Local bests of converged clusters, kept for re-injection after a change.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Archive {
    pub entries: Vec<ArchiveEntry>,
}

impl Archive {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn in_environment(&self, environment: u64) -> impl Iterator<Item = &ArchiveEntry> {
        self.entries.iter().filter(move |e| e.environment == environment)
    }
}

/// Direction of the overlap-merge comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OverlapRule {
    /// Merge when the overlap ratio exceeds the threshold.
    #[default]
    Above,
    /// Merge when the overlap ratio is below the threshold.
    Below,
}

/// Parameters shared by every operation that builds a fresh cradle swarm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cradle {
    pub size: usize,
    pub max_subsize: usize,
    pub dims: usize,
    pub bounds: Bounds,
}

impl Cradle {
    fn spawn<R, O>(&self, preserved: &[Vec<f64>], rng: &mut R, objective: &mut O) -> Result<Vec<Cluster>>
    where
        R: Rng + ?Sized,
        O: Objective + ?Sized,
    {
        let mut swarm: Vec<Particle> =
            (0..self.size).map(|_| Particle::random(self.dims, self.bounds, rng, objective)).collect();
        for position in preserved {
            let fitness = objective.eval(position);
            swarm.push(Particle::at_rest(position.clone(), fitness));
        }
        cluster_population(swarm, self.max_subsize)
    }
}

fn fraction_inside(a: &Cluster, center: &[f64], radius: f64) -> f64 {
    let inside = a.members.iter().filter(|p| distance(&p.position, center) <= radius).count();
    inside as f64 / a.len() as f64
}

/// The smaller of the two mutual containment fractions.
pub fn overlap_ratio(a: &Cluster, b: &Cluster) -> f64 {
    let (ca, ra) = a.geometry();
    let (cb, rb) = b.geometry();
    fraction_inside(a, &cb, rb).min(fraction_inside(b, &ca, ra))
}

fn merge_into(target: &mut Cluster, other: Cluster) {
    if other.lbest_fitness > target.lbest_fitness {
        target.lbest_position = other.lbest_position;
        target.lbest_fitness = other.lbest_fitness;
    }
    target.members.extend(other.members);
    target.iterations = 0;
}

/// Merges overlapping pairs until none is left. Pairs are scanned in index
/// order and the scan restarts after every merge. Returns the merge count.
pub fn apply_overlap_check(clusters: &mut Vec<Cluster>, threshold: f64, rule: OverlapRule) -> usize {
    let mut merges = 0;
    'scan: loop {
        let geometry: Vec<(Vec<f64>, f64)> = clusters.iter().map(Cluster::geometry).collect();
        for i in 0..clusters.len() {
            for j in i + 1..clusters.len() {
                let (ci, ri) = &geometry[i];
                let (cj, rj) = &geometry[j];
                let ratio = fraction_inside(&clusters[i], cj, *rj).min(fraction_inside(&clusters[j], ci, *ri));
                let fire = match rule {
                    OverlapRule::Above => ratio > threshold,
                    OverlapRule::Below => ratio < threshold,
                };
                if fire {
                    let other = clusters.remove(j);
                    merge_into(&mut clusters[i], other);
                    merges += 1;
                    continue 'scan;
                }
            }
        }
        return merges;
    }
}

/// Drops the members with the worst personal bests until at most
/// `max_subsize` remain. On equal fitness the later member goes first.
/// Survivors keep their relative order; the local best is untouched.
pub fn apply_overcrowd_check(cluster: &mut Cluster, max_subsize: usize) {
    if cluster.len() <= max_subsize {
        return;
    }
    let mut order: Vec<usize> = (0..cluster.len()).collect();
    order.sort_by(|&a, &b| {
        cluster.members[b].pbest_fitness.total_cmp(&cluster.members[a].pbest_fitness).then(a.cmp(&b))
    });
    let mut keep = vec![false; cluster.len()];
    for &i in &order[..max_subsize] {
        keep[i] = true;
    }
    let mut idx = 0;
    cluster.members.retain(|_| {
        let k = keep[idx];
        idx += 1;
        k
    });
}

/// Removes every cluster whose radius is below `eps` and archives its
/// local best. Returns how many were archived.
pub fn apply_convergence_check(
    clusters: &mut Vec<Cluster>,
    eps: f64,
    archive: &mut Archive,
    environment: u64,
) -> usize {
    let before = clusters.len();
    clusters.retain(|c| {
        let (_, radius) = c.geometry();
        if radius < eps {
            archive.entries.push(ArchiveEntry {
                position: c.lbest_position.clone(),
                fitness: c.lbest_fitness,
                environment,
            });
            false
        } else {
            true
        }
    });
    before - clusters.len()
}

/// Fills an empty cluster list with a freshly clustered random cradle
/// swarm. Returns the number of clusters created.
pub fn repopulate_if_empty<R, O>(
    clusters: &mut Vec<Cluster>,
    cradle: &Cradle,
    rng: &mut R,
    objective: &mut O,
) -> Result<usize>
where
    R: Rng + ?Sized,
    O: Objective + ?Sized,
{
    if !clusters.is_empty() {
        return Ok(0);
    }
    *clusters = cradle.spawn(&[], rng, objective)?;
    Ok(clusters.len())
}

/// Re-evaluates every local best; reports a change if any value moved by
/// more than [`CHANGE_TOLERANCE`]. Costs one evaluation per cluster.
pub fn detect_change<O: Objective + ?Sized>(clusters: &[Cluster], objective: &mut O) -> bool {
    let mut changed = false;
    for c in clusters {
        let now = objective.eval(&c.lbest_position);
        if (now - c.lbest_fitness).abs() > CHANGE_TOLERANCE {
            changed = true;
        }
    }
    changed
}

/// Builds the swarm for a new environment: a random cradle swarm plus one
/// resting particle at every surviving local best and every archived local
/// best of `ended_environment`, all evaluated afresh and then clustered.
/// Archive entries up to and including `ended_environment` are dropped.
pub fn rebuild_after_change<R, O>(
    clusters: Vec<Cluster>,
    archive: &mut Archive,
    ended_environment: u64,
    cradle: &Cradle,
    rng: &mut R,
    objective: &mut O,
) -> Result<Vec<Cluster>>
where
    R: Rng + ?Sized,
    O: Objective + ?Sized,
{
    let mut preserved: Vec<Vec<f64>> = clusters.into_iter().map(|c| c.lbest_position).collect();
    preserved.extend(archive.in_environment(ended_environment).map(|e| e.position.clone()));
    archive.entries.retain(|e| e.environment > ended_environment);
    cradle.spawn(&preserved, rng, objective)
}
