//! Fast paths against the brute-force references.

use cyclic_rips_core::circle::{find_regular_subset, sample_uniform};
use cyclic_rips_core::cyclic_graph::build_homomorphism;
use cyclic_rips_core::oracle::{
    cyclic_homomorphism_by_definition, max_wf_by_homomorphisms, random_cyclic_graph, regular_subset_exists_brute,
};
use cyclic_rips_core::rational::ratio;
use cyclic_rips_core::{CyclicGraph, PointConfiguration, Rational};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn grid_configuration(rng: &mut ChaCha8Rng, den: i64, len: usize) -> PointConfiguration {
    let mut nums: Vec<i64> = (0..den).collect();
    nums.shuffle(rng);
    PointConfiguration::from_rationals(nums[..len].iter().map(|&p| ratio(p, den)).collect()).unwrap()
}

#[test]
fn regular_subsets_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut found = 0;
    for trial in 0..150 {
        let den = [12i64, 30, 60, 1000][trial % 4];
        let len = rng.random_range(1..=12);
        let x = grid_configuration(&mut rng, den, len);
        let m = rng.random_range(1..=4);
        let eps = ratio(rng.random_range(1..20), rng.random_range(20..200));
        let fast = find_regular_subset(&x, &eps, m);
        if let Some(w) = &fast {
            assert!(w.is_valid(&eps));
        }
        assert_eq!(fast.is_some(), regular_subset_exists_brute(x.points(), &eps, m), "{x}, eps {eps}, m {m}");
        found += usize::from(fast.is_some());
    }
    assert!(found > 20 && found < 130, "{found}");
}

#[test]
fn thirty_points_three_gon() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for eps in [ratio(1, 200), ratio(1, 60), ratio(1, 25)] {
        let x = sample_uniform(&mut rng, 30);
        let fast = find_regular_subset(&x, &eps, 3).is_some();
        assert_eq!(fast, regular_subset_exists_brute(x.points(), &eps, 3), "eps {eps}");
    }
}

fn random_r(rng: &mut ChaCha8Rng) -> Rational {
    let q = rng.random_range(3..40i64);
    ratio(rng.random_range(1..=(q - 1) / 2), q)
}

#[test]
fn winding_fraction_is_the_best_homomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for trial in 0..50 {
        let len = rng.random_range(1..=10);
        let x = grid_configuration(&mut rng, [10i64, 24, 60][trial % 3], len);
        let r = random_r(&mut rng);
        let g = CyclicGraph::vr_digraph(&x, &r, rng.random_bool(0.5)).unwrap();
        let wf = g.winding_fraction().unwrap();
        let best = max_wf_by_homomorphisms(&g, 10);
        assert!(wf.value_cmp(&best).is_eq(), "{x} at {r}: wf {wf}, search {best}");
    }
}

#[test]
fn built_maps_compose() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut composed = 0;
    for _ in 0..200 {
        let gs: Vec<CyclicGraph> = (0..3)
            .map(|_| {
                let n = rng.random_range(1..=9);
                random_cyclic_graph(&mut rng, n)
            })
            .collect();
        let (Some(f), Some(g)) =
            (build_homomorphism(&gs[0], &gs[1]).unwrap(), build_homomorphism(&gs[1], &gs[2]).unwrap())
        else {
            continue;
        };
        let h = f.then(&g).unwrap();
        assert!(cyclic_homomorphism_by_definition(&h));
        assert!(h.is_cyclic_homomorphism());
        composed += 1;
    }
    assert!(composed > 20);
}
