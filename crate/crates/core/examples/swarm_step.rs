//! A single cluster of particles climbing a static landscape with the
//! velocity update, the inertia schedule and dimension-wise lbest learning.

use dcpso::mpb::{Landscape, MpbSettings};
use dcpso::swarm::{inertia, learn_lbest_dimensionwise, step_particle, Cluster, Particle, PsoParams};
use dcpso::Objective;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> dcpso::Result<()> {
    let settings = MpbSettings { peaks: 1, ..Default::default() };
    let bounds = settings.bounds;
    let mut landscape = Landscape::new(settings, 3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let params = PsoParams { v_max: 50.0, ..Default::default() };

    let members = (0..3).map(|_| Particle::random(5, bounds, &mut rng, &mut landscape)).collect();
    let mut cluster = Cluster::new(members);
    let iterations = 60;
    let (_, optimum) = landscape.current_optimum();
    println!("start: lbest gap {:.3e}", optimum - cluster.lbest_fitness);

    for it in 0..iterations {
        let w = inertia(params.w_max, params.w_min, it, iterations)?;
        let lbest = cluster.lbest_position.clone();
        for i in 0..cluster.len() {
            let p = &mut cluster.members[i];
            step_particle(p, &lbest, w, &params, bounds, &mut rng);
            let fitness = landscape.eval(&p.position);
            if p.update_pbest(fitness) {
                let candidate = p.position.clone();
                learn_lbest_dimensionwise(&mut cluster, &candidate, &mut landscape);
                cluster.offer(&candidate, fitness);
            }
        }
        if it % 10 == 0 {
            println!("iteration {it:>3}: w = {w:.3}, lbest gap {:.3e}", optimum - cluster.lbest_fitness);
        }
    }

    println!("final lbest {:.6}, optimum {optimum:.6}, {} evaluations", cluster.lbest_fitness, landscape.evaluations());
    Ok(())
}
