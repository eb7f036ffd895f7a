mod common;

use common::{as_index_groups, brute_force_clustering, particles, random_points, rng};
use dcpso::clustering::cluster_population;
use proptest::prelude::*;

#[test]
fn matches_brute_force_on_small_instances() {
    for seed in 0..300u64 {
        let mut r = rng(seed);
        let n = 1 + (seed as usize % 8);
        let dims = 1 + (seed as usize % 3);
        let max_subsize = 2 + (seed as usize % 4);
        let points = random_points(&mut r, n, dims, 10.0);
        let got = cluster_population(particles(&points), max_subsize).unwrap();
        assert_eq!(as_index_groups(&points, &got), brute_force_clustering(&points, max_subsize), "seed {seed}");
    }
}

#[test]
fn same_input_same_clustering() {
    let points = random_points(&mut rng(77), 60, 5, 100.0);
    let a = cluster_population(particles(&points), 3).unwrap();
    let b = cluster_population(particles(&points), 3).unwrap();
    assert_eq!(a, b);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partition_and_size_invariants(seed in 0u64..10_000, n in 1usize..=200, max_subsize in 2usize..=8) {
        let points = random_points(&mut rng(seed), n, 3, 100.0);
        let clusters = cluster_population(particles(&points), max_subsize).unwrap();
        let mut seen: Vec<usize> = as_index_groups(&points, &clusters).into_iter().flatten().collect();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..n).collect::<Vec<_>>());
        prop_assert!(clusters.iter().all(|c| c.len() <= max_subsize));
        prop_assert!(clusters.len() >= n.div_ceil(max_subsize));
        prop_assert!(clusters.len() <= n);
        for c in &clusters {
            let best = c.members.iter().map(|p| p.pbest_fitness).fold(f64::NEG_INFINITY, f64::max);
            prop_assert_eq!(c.lbest_fitness, best);
        }
    }
}
