//! Particles, clusters and the per-particle update rule.

use rand::Rng;

use crate::error::{Error, Result};
use crate::geometry::{centroid, distance, Bounds};
use crate::objective::Objective;

/// A position together with its fitness.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub position: Vec<f64>,
    pub fitness: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Particle {
    pub position: Vec<f64>,
    pub velocity: Vec<f64>,
    pub pbest_position: Vec<f64>,
    pub pbest_fitness: f64,
}

impl Particle {
    /// A resting particle whose personal best is its current position.
    pub fn at_rest(position: Vec<f64>, fitness: f64) -> Self {
        Particle {
            velocity: vec![0.0; position.len()],
            pbest_position: position.clone(),
            position,
            pbest_fitness: fitness,
        }
    }

    /// Uniform random particle in `bounds`, evaluated once.
    pub fn random<R: Rng + ?Sized, O: Objective + ?Sized>(
        dims: usize,
        bounds: Bounds,
        rng: &mut R,
        objective: &mut O,
    ) -> Self {
        let position = bounds.sample(dims, rng);
        let fitness = objective.eval(&position);
        Particle::at_rest(position, fitness)
    }

    /// Records `fitness` (the value of the current position) as the new
    /// personal best if it is strictly better. Returns whether it was.
    pub fn update_pbest(&mut self, fitness: f64) -> bool {
        if fitness > self.pbest_fitness {
            self.pbest_position.clone_from(&self.position);
            self.pbest_fitness = fitness;
            true
        } else {
            false
        }
    }
}

/// A sub-swarm with its own local best.
#[derive(Debug, Clone, PartialEq)]
pub struct Cluster {
    pub members: Vec<Particle>,
    pub lbest_position: Vec<f64>,
    pub lbest_fitness: f64,
    /// Iterations since the cluster was formed; drives the inertia schedule.
    pub iterations: usize,
}

impl Cluster {
    /// Builds a cluster whose local best is its best member pbest
    /// (lowest index on ties).
    ///
    /// Panics if `members` is empty.
    pub fn new(members: Vec<Particle>) -> Self {
        assert!(!members.is_empty(), "a cluster needs at least one member");
        let mut best = 0;
        for (i, p) in members.iter().enumerate().skip(1) {
            if p.pbest_fitness > members[best].pbest_fitness {
                best = i;
            }
        }
        let lbest_position = members[best].pbest_position.clone();
        let lbest_fitness = members[best].pbest_fitness;
        Cluster { members, lbest_position, lbest_fitness, iterations: 0 }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn dims(&self) -> usize {
        self.lbest_position.len()
    }

    pub fn lbest(&self) -> Solution {
        Solution { position: self.lbest_position.clone(), fitness: self.lbest_fitness }
    }

    /// Mean member position and the largest member distance from it.
    pub fn geometry(&self) -> (Vec<f64>, f64) {
        let center = centroid(self.members.iter().map(|p| p.position.as_slice()), self.dims());
        let radius = self.members.iter().map(|p| distance(&p.position, &center)).fold(0.0, f64::max);
        (center, radius)
    }

    /// Replaces the local best if `candidate` is strictly better.
    pub fn offer(&mut self, position: &[f64], fitness: f64) -> bool {
        if fitness > self.lbest_fitness {
            self.lbest_position.clear();
            self.lbest_position.extend_from_slice(position);
            self.lbest_fitness = fitness;
            true
        } else {
            false
        }
    }
}

/// PSO coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsoParams {
    pub w_max: f64,
    pub w_min: f64,
    /// Cognitive acceleration.
    pub eta1: f64,
    /// Social acceleration.
    pub eta2: f64,
    pub v_max: f64,
}

impl Default for PsoParams {
    fn default() -> Self {
        PsoParams { w_max: 0.6, w_min: 0.3, eta1: 1.7, eta2: 1.7, v_max: 50.0 }
    }
}

impl PsoParams {
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn validate(&self) -> Result<()> {
        if !(0.0 <= self.w_min && self.w_min <= self.w_max && self.w_max <= 1.0) {
            return Err(Error::config("w_min", "need 0 <= w_min <= w_max <= 1"));
        }
        if !(self.eta1 >= 0.0) {
            return Err(Error::config("eta1", "must be non-negative"));
        }
        if !(self.eta2 >= 0.0) {
            return Err(Error::config("eta2", "must be non-negative"));
        }
        if !(self.v_max > 0.0 && self.v_max.is_finite()) {
            return Err(Error::config("v_max", "must be positive"));
        }
        Ok(())
    }
}

/// Linearly decreasing inertia: `w_max` at `c_itr = 0`, `w_min` at
/// `c_itr = r_itr`.
pub fn inertia(w_max: f64, w_min: f64, c_itr: usize, r_itr: usize) -> Result<f64> {
    if r_itr == 0 {
        return Err(Error::contract("remaining iterations must be at least 1"));
    }
    Ok(w_max - (w_max - w_min) * c_itr as f64 / r_itr as f64)
}

/// Iterations left before the next change if every particle is evaluated
/// once per iteration. Never less than 1.
pub fn remaining_iterations(change_frequency: u64, evals: u64, p_size: usize) -> Result<usize> {
    if p_size == 0 {
        return Err(Error::contract("population size must be at least 1"));
    }
    let left = change_frequency.saturating_sub(evals) / p_size as u64;
    Ok((left as usize).max(1))
}

/// One velocity/position update with per-dimension uniform draws from `rng`.
pub fn step_particle<R: Rng + ?Sized>(
    particle: &mut Particle,
    lbest: &[f64],
    w: f64,
    params: &PsoParams,
    bounds: Bounds,
    rng: &mut R,
) {
    step_particle_with(particle, lbest, w, params, bounds, || rng.random::<f64>());
}

/// [`step_particle`] with the uniform source supplied by the caller. Two
/// draws are taken per dimension, cognitive first.
pub fn step_particle_with<F: FnMut() -> f64>(
    particle: &mut Particle,
    lbest: &[f64],
    w: f64,
    params: &PsoParams,
    bounds: Bounds,
    mut uniform: F,
) {
    let Particle { position, velocity, pbest_position, .. } = particle;
    for d in 0..position.len() {
        let r1 = uniform();
        let r2 = uniform();
        let x = position[d];
        let v = w * velocity[d] + params.eta1 * r1 * (pbest_position[d] - x) + params.eta2 * r2 * (lbest[d] - x);
        let v = v.clamp(-params.v_max, params.v_max);
        let moved = x + v;
        if moved < bounds.low || moved > bounds.high {
            position[d] = bounds.clamp(moved);
            velocity[d] = 0.0;
        } else {
            position[d] = moved;
            velocity[d] = v;
        }
    }
}

/// Dimension-wise local best learning: each dimension of `candidate` is
/// tried in turn in place of the corresponding lbest dimension and kept if
/// it strictly improves. Costs exactly `D` evaluations.
pub fn learn_lbest_dimensionwise<O: Objective + ?Sized>(cluster: &mut Cluster, candidate: &[f64], objective: &mut O) {
    let mut trial = cluster.lbest_position.clone();
    for d in 0..candidate.len() {
        let kept = trial[d];
        trial[d] = candidate[d];
        let fitness = objective.eval(&trial);
        if fitness > cluster.lbest_fitness {
            cluster.lbest_position[d] = candidate[d];
            cluster.lbest_fitness = fitness;
        } else {
            trial[d] = kept;
        }
    }
}
