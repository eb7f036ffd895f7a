//! Merging, trimming, archiving and the rebuild that follows a change.

use dcpso::clustering::cluster_population;
use dcpso::geometry::Bounds;
use dcpso::mpb::{Landscape, MpbSettings};
use dcpso::population::{
    apply_convergence_check, apply_overcrowd_check, apply_overlap_check, detect_change, rebuild_after_change, Archive,
    Cradle, OverlapRule,
};
use dcpso::swarm::Particle;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> dcpso::Result<()> {
    let mut landscape = Landscape::new(MpbSettings::default(), 5)?;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let cradle = Cradle { size: 40, max_subsize: 3, dims: 5, bounds: Bounds::new(0.0, 100.0) };

    let swarm: Vec<Particle> =
        (0..cradle.size).map(|_| Particle::random(cradle.dims, cradle.bounds, &mut rng, &mut landscape)).collect();
    let mut clusters = cluster_population(swarm, cradle.max_subsize)?;
    println!("{} clusters from {} particles", clusters.len(), cradle.size);

    // pile two clusters onto the same spot so the overlap check has work to do
    let copy = clusters[0].clone();
    clusters.push(copy);
    let merges = apply_overlap_check(&mut clusters, 0.6, OverlapRule::Above);
    println!("overlap check merged {merges} pair(s), {} clusters left", clusters.len());

    for c in &mut clusters {
        apply_overcrowd_check(c, cradle.max_subsize);
    }
    println!("largest cluster after trimming: {}", clusters.iter().map(|c| c.len()).max().unwrap_or(0));

    // collapse one cluster onto its local best so it counts as converged
    let lbest = clusters[1].lbest_position.clone();
    for m in &mut clusters[1].members {
        m.position.clone_from(&lbest);
    }
    let mut archive = Archive::default();
    let archived = apply_convergence_check(&mut clusters, 1e-4, &mut archive, 0);
    println!("archived {archived}, {} clusters still searching", clusters.len());

    println!("change seen before advancing: {}", detect_change(&clusters, &mut landscape));
    landscape.advance();
    println!("change seen after advancing: {}", detect_change(&clusters, &mut landscape));

    let before = landscape.evaluations();
    let survivors = clusters.len();
    let rebuilt = rebuild_after_change(clusters, &mut archive, 0, &cradle, &mut rng, &mut landscape)?;
    println!(
        "rebuilt {} clusters from {} random + {} preserved particles ({} evaluations)",
        rebuilt.len(),
        cradle.size,
        survivors + archived,
        landscape.evaluations() - before
    );
    Ok(())
}
