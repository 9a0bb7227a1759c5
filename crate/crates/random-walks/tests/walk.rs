use std::sync::Arc;

use discrete_heisenberg::{HeisenbergSpace, LieGauge, WordMetricTable, H};
use euclidean::{Lattice, Metric};
use metric_core::GroupSpace;
use random_walks::*;

#[test]
fn deterministic_walk_lists_powers() {
    let s = HeisenbergSpace::gauge(LieGauge::default());
    let g = H::new(2, 1, 0);
    let t = simulate(&s, &StepDistribution::dirac(g), 10, 3).unwrap();
    let powers: Vec<H> = (1..=10).map(|n| g.pow(n)).collect();
    assert_eq!(t.points(), &powers[..]);
    assert!(simulate(&s, &StepDistribution::dirac(g), 0, 3).is_err());
}

#[test]
fn same_seed_same_trajectory() {
    let z = Lattice::new(2, Metric::L1);
    let d = StepDistribution::uniform(vec![vec![1, 0], vec![0, 1], vec![-1, 0]]).unwrap();
    let a = simulate(&z, &d, 2000, 17).unwrap();
    let b = simulate(&z, &d, 2000, 17).unwrap();
    let c = simulate(&z, &d, 2000, 18).unwrap();
    assert_eq!(a.points(), b.points());
    assert_eq!(a.norms(), b.norms());
    assert_ne!(a.points(), c.points());
}

#[test]
fn integer_walk_obeys_the_law_of_large_numbers() {
    let z = Lattice::new(1, Metric::L1);
    let d = StepDistribution::uniform(vec![vec![0], vec![1]]).unwrap();
    for seed in 1..=10 {
        let t = simulate(&z, &d, 10_000, seed).unwrap();
        let mean = t.points().last().unwrap()[0] as f64 / 10_000.0;
        assert!((0.45..=0.55).contains(&mean), "seed {seed}: {mean}");
    }
}

#[test]
fn abelian_image_matches_the_lattice_walk() {
    let h = HeisenbergSpace::gauge(LieGauge::default());
    let d = StepDistribution::uniform(vec![H::new(1, 0, 0), H::new(1, 1, 0), H::new(0, -1, 2), H::new(-1, 0, 0)]).unwrap();
    let z = Lattice::new(2, Metric::L1);
    let dz = d.map(|g| vec![g.a, g.b]);
    for seed in [1, 2, 3] {
        let th = simulate(&h, &d, 3000, seed).unwrap();
        let tz = simulate(&z, &dz, 3000, seed).unwrap();
        for (g, v) in th.points().iter().zip(tz.points()) {
            assert_eq!(vec![g.a, g.b], *v);
        }
    }
}

#[test]
fn fallback_points_are_flagged() {
    let s = HeisenbergSpace::word_or_gauge(Arc::new(WordMetricTable::standard(10).unwrap()), LieGauge::default());
    let t = simulate(&s, &StepDistribution::dirac(H::new(1, 0, 0)), 30, 0).unwrap();
    // Lengths up to twice the table radius are exact.
    for (k, (&n, &f)) in t.norms().iter().zip(&t.fallback).enumerate() {
        assert_eq!(n, (k + 1) as f64);
        assert_eq!(f, k + 1 > 20);
    }
    assert_eq!(t.fallback_count(), 10);
}

#[test]
fn reach_is_the_least_norm_of_the_last_tenth() {
    let z = Lattice::new(1, Metric::L1);
    let t = simulate(&z, &StepDistribution::dirac(vec![1]), 100, 0).unwrap();
    assert_eq!(t.reach(), 91.0);
    assert_eq!(z.identity(), vec![0]);
}
