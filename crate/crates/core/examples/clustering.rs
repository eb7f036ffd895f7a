//! Splits a random swarm into size-limited groups by single linkage.

use dcpso::clustering::cluster_population;
use dcpso::geometry::Bounds;
use dcpso::objective::Counted;
use dcpso::swarm::Particle;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> dcpso::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let bounds = Bounds::new(0.0, 10.0);
    let mut objective = Counted::new(|x: &[f64]| -x.iter().map(|v| (v - 5.0).powi(2)).sum::<f64>());
    let swarm: Vec<Particle> = (0..12).map(|_| Particle::random(2, bounds, &mut rng, &mut objective)).collect();

    for max_subsize in [2, 3, 5] {
        let clusters = cluster_population(swarm.clone(), max_subsize)?;
        println!("max_subsize {max_subsize}: {} clusters", clusters.len());
        for (i, c) in clusters.iter().enumerate() {
            let (center, radius) = c.geometry();
            println!(
                "  #{i}: {} members around ({:.2}, {:.2}), radius {radius:.2}, lbest {:.3}",
                c.len(),
                center[0],
                center[1],
                c.lbest_fitness
            );
        }
    }
    Ok(())
}
