mod common;

use common::{random_points, rng};
use dcpso::diversity::{explore_area, recombine_best_dimensions, ConfidenceTable, Diversity, Exploration};
use dcpso::geometry::Bounds;
use dcpso::objective::{Counted, Objective};
use dcpso::swarm::{Cluster, Particle, Solution};
use proptest::prelude::*;

fn bumpy(x: &[f64]) -> f64 {
    x.iter().map(|v| (v / 7.0).sin() * 10.0 - (v - 40.0).abs() * 0.1).sum()
}

fn clusters(seed: u64, count: usize, dims: usize) -> Vec<Cluster> {
    random_points(&mut rng(seed), 2 * count, dims, 100.0)
        .chunks(2)
        .map(|pair| Cluster::new(pair.iter().map(|p| Particle::at_rest(p.clone(), bumpy(p))).collect()))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn recombination_never_gets_worse(seed in 0u64..10_000, donors in 1usize..6, dims in 1usize..6) {
        let pts = random_points(&mut rng(seed), donors + 1, dims, 100.0);
        let sols: Vec<Solution> = pts.iter().map(|p| Solution { position: p.clone(), fitness: bumpy(p) }).collect();
        let mut obj = Counted::new(bumpy);
        let out = recombine_best_dimensions(&sols[0], &sols[1..], &mut obj);
        prop_assert!(out.fitness >= sols[0].fitness);
        prop_assert_eq!(out.fitness, bumpy(&out.position));
        prop_assert_eq!(obj.evaluations(), (dims * donors) as u64);
        for (d, x) in out.position.iter().enumerate() {
            prop_assert!(sols.iter().any(|s| s.position[d] == *x));
        }
    }

    #[test]
    fn only_the_worst_cluster_changes(seed in 0u64..10_000, count in 2usize..8, dims in 1usize..5) {
        let mut g = clusters(seed, count, dims);
        let before = g.clone();
        let bounds = Bounds::new(0.0, 100.0);
        let mut obj = Counted::new(bumpy);
        let mut r = rng(seed);
        let outcome = explore_area(&mut g, &Diversity::default(), &mut ConfidenceTable::default(), bounds, &mut r, &mut obj);
        let recombine_cost = (dims * (count - 1)) as u64;
        match outcome {
            Exploration::Skipped => prop_assert!(false, "two or more clusters never skip"),
            Exploration::Kept { worst } => {
                prop_assert_eq!(&g, &before);
                prop_assert_eq!(obj.evaluations(), recombine_cost);
                prop_assert!(before.iter().all(|c| c.lbest_fitness >= before[worst].lbest_fitness));
            }
            Exploration::Relocated { worst, target } => {
                prop_assert!(target.fitness > before[worst].lbest_fitness);
                prop_assert_eq!(g[worst].lbest(), target);
                prop_assert_eq!(obj.evaluations(), recombine_cost + before[worst].len() as u64);
                for (i, (a, b)) in g.iter().zip(&before).enumerate() {
                    if i != worst {
                        prop_assert_eq!(a, b);
                    }
                }
                for m in &g[worst].members {
                    prop_assert!(bounds.contains(&m.position));
                    prop_assert!(m.velocity.iter().all(|v| *v == 0.0));
                    prop_assert_eq!(m.pbest_fitness, bumpy(&m.position));
                }
            }
        }
    }
}

#[test]
fn gating_waits_for_a_second_sighting() {
    let settings = Diversity { confidence: true, ..Default::default() };
    let make = || {
        vec![
            Cluster::new(vec![Particle::at_rest(vec![10.0, 90.0], bumpy(&[10.0, 90.0]))]),
            Cluster::new(vec![Particle::at_rest(vec![40.0, 40.0], bumpy(&[40.0, 40.0]))]),
        ]
    };
    let bounds = Bounds::new(0.0, 100.0);
    let mut table = ConfidenceTable::default();
    let mut obj = Counted::new(bumpy);
    let mut r = rng(0);
    let mut g = make();
    assert!(matches!(explore_area(&mut g, &settings, &mut table, bounds, &mut r, &mut obj), Exploration::Kept { .. }));
    assert_eq!(table.len(), 1);
    let mut g = make();
    assert!(matches!(
        explore_area(&mut g, &settings, &mut table, bounds, &mut r, &mut obj),
        Exploration::Relocated { .. }
    ));
}

#[test]
fn disabled_mechanism_costs_nothing() {
    let mut g = clusters(3, 5, 3);
    let settings = Diversity { enabled: false, ..Default::default() };
    let mut obj = Counted::new(bumpy);
    let out = explore_area(
        &mut g,
        &settings,
        &mut ConfidenceTable::default(),
        Bounds::new(0.0, 100.0),
        &mut rng(1),
        &mut obj,
    );
    assert_eq!(out, Exploration::Skipped);
    assert_eq!(obj.evaluations(), 0);
}
