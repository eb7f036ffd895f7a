//! Recombines the other clusters' best coordinates into the worst one and
//! relocates it when that helps.

use dcpso::diversity::{explore_area, ConfidenceTable, Diversity, Exploration};
use dcpso::geometry::Bounds;
use dcpso::objective::Counted;
use dcpso::swarm::{Cluster, Particle};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fitness(x: &[f64]) -> f64 {
    -((x[0] - 20.0).powi(2) + (x[1] - 80.0).powi(2)).sqrt()
}

fn cluster_at(points: &[[f64; 2]]) -> Cluster {
    Cluster::new(points.iter().map(|p| Particle::at_rest(p.to_vec(), fitness(p))).collect())
}

fn main() {
    let mut clusters = vec![
        cluster_at(&[[20.0, 10.0], [22.0, 12.0]]),
        cluster_at(&[[70.0, 80.0], [68.0, 79.0]]),
        cluster_at(&[[95.0, 5.0], [90.0, 2.0]]),
    ];
    let bounds = Bounds::new(0.0, 100.0);
    let mut objective = Counted::new(fitness);
    let mut table = ConfidenceTable::default();
    let mut rng = ChaCha8Rng::seed_from_u64(1);

    for (name, settings) in [
        ("gated", Diversity { confidence: true, ..Default::default() }),
        ("gated, second look", Diversity { confidence: true, ..Default::default() }),
        ("ungated", Diversity::default()),
    ] {
        let outcome = explore_area(&mut clusters, &settings, &mut table, bounds, &mut rng, &mut objective);
        match outcome {
            Exploration::Skipped => println!("{name}: skipped"),
            Exploration::Kept { worst } => println!("{name}: cluster {worst} stays"),
            Exploration::Relocated { worst, target } => println!(
                "{name}: cluster {worst} moved to ({:.1}, {:.1}) with fitness {:.3}",
                target.position[0], target.position[1], target.fitness
            ),
        }
    }
    println!("{} evaluations spent", dcpso::Objective::evaluations(&objective));
}
