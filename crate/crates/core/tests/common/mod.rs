#![allow(dead_code)]

use dcpso::swarm::{Cluster, Particle};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Constrained single-linkage clustering recomputed from scratch at every
/// merge: all cross pairs of every candidate pair of groups are compared.
/// Returns groups of input indices.
pub fn brute_force_clustering(points: &[Vec<f64>], max_subsize: usize) -> Vec<Vec<usize>> {
    let dist = |a: usize, b: usize| -> f64 {
        points[a].iter().zip(&points[b]).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
    };
    let mut groups: Vec<Vec<usize>> = (0..points.len()).map(|i| vec![i]).collect();
    while groups.iter().any(|g| g.len() < 2) {
        let mut best: Option<(usize, usize, f64)> = None;
        for i in 0..groups.len() {
            for j in i + 1..groups.len() {
                if groups[i].len() + groups[j].len() > max_subsize {
                    continue;
                }
                let mut d = f64::INFINITY;
                for &a in &groups[i] {
                    for &b in &groups[j] {
                        d = d.min(dist(a, b));
                    }
                }
                match best {
                    Some((_, _, bd)) if d >= bd => {}
                    _ => best = Some((i, j, d)),
                }
            }
        }
        let Some((i, j, _)) = best else { break };
        let moved = groups.remove(j);
        groups[i].extend(moved);
    }
    groups
}

/// Maps each output cluster back to input indices by position lookup.
/// Positions must be distinct.
pub fn as_index_groups(points: &[Vec<f64>], clusters: &[Cluster]) -> Vec<Vec<usize>> {
    clusters
        .iter()
        .map(|c| {
            c.members
                .iter()
                .map(|p| points.iter().position(|q| *q == p.position).expect("member comes from input"))
                .collect()
        })
        .collect()
}

pub fn random_points(rng: &mut impl Rng, n: usize, dims: usize, scale: f64) -> Vec<Vec<f64>> {
    (0..n).map(|_| (0..dims).map(|_| rng.random::<f64>() * scale).collect()).collect()
}

pub fn particles(points: &[Vec<f64>]) -> Vec<Particle> {
    points.iter().enumerate().map(|(i, p)| Particle::at_rest(p.clone(), i as f64)).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
