//! Size-constrained single-linkage clustering of a cradle swarm.
//!
//! Starting from singletons, the closest pair of clusters whose combined
//! size fits under `max_subsize` is merged until every cluster has at least
//! two members or no legal merge is left. Equal distances resolve to the
//! lexicographically smallest `(i, j)` pair of list positions; the merged
//! cluster takes position `i` (members of `i` first) and `j` is removed.

use crate::error::{Error, Result};
use crate::geometry::distance;
use crate::swarm::{Cluster, Particle};

/// Minimum distance over all cross pairs of member positions.
pub fn single_linkage_distance(a: &Cluster, b: &Cluster) -> f64 {
    let mut best = f64::INFINITY;
    for p in &a.members {
        for q in &b.members {
            best = best.min(distance(&p.position, &q.position));
        }
    }
    best
}

/// Closest pair `(i, j)`, `i < j`, whose combined size is at most
/// `max_subsize`.
pub fn find_nearest_pair(clusters: &[Cluster], max_subsize: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, f64)> = None;
    for i in 0..clusters.len() {
        for j in i + 1..clusters.len() {
            if clusters[i].len() + clusters[j].len() > max_subsize {
                continue;
            }
            let d = single_linkage_distance(&clusters[i], &clusters[j]);
            if best.is_none_or(|(_, _, bd)| d < bd) {
                best = Some((i, j, d));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Partitions `particles` into clusters of at most `max_subsize` members.
/// Each cluster's local best is its best member pbest.
pub fn cluster_population(particles: Vec<Particle>, max_subsize: usize) -> Result<Vec<Cluster>> {
    if particles.is_empty() {
        return Err(Error::contract("cannot cluster an empty swarm"));
    }
    if max_subsize < 2 {
        return Err(Error::contract("max_subsize must be at least 2"));
    }
    let n = particles.len();
    let mut groups: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    // Single-linkage distances between groups, kept in sync with `groups`.
    let mut dist: Vec<Vec<f64>> =
        (0..n).map(|i| (0..n).map(|j| distance(&particles[i].position, &particles[j].position)).collect()).collect();

    while groups.iter().any(|g| g.len() < 2) {
        let mut best: Option<(usize, usize, f64)> = None;
        for i in 0..groups.len() {
            for j in i + 1..groups.len() {
                if groups[i].len() + groups[j].len() > max_subsize {
                    continue;
                }
                let d = dist[i][j];
                if best.is_none_or(|(_, _, bd)| d < bd) {
                    best = Some((i, j, d));
                }
            }
        }
        let Some((i, j, _)) = best else { break };

        let absorbed = groups.remove(j);
        groups[i].extend(absorbed);
        let row_j = dist.remove(j);
        for (k, row) in dist.iter_mut().enumerate() {
            let dj = row.remove(j);
            if k != i {
                let merged = row[i].min(dj);
                row[i] = merged;
            }
        }
        for (k, d) in dist[i].iter_mut().enumerate() {
            if k != i {
                let src = if k < j { k } else { k + 1 };
                *d = d.min(row_j[src]);
            }
        }
    }

    let mut slots: Vec<Option<Particle>> = particles.into_iter().map(Some).collect();
    Ok(groups
        .into_iter()
        .map(|g| Cluster::new(g.into_iter().map(|i| slots[i].take().expect("index used once")).collect()))
        .collect())
}
