use cone_metric::*;
use euclidean::*;
use metric_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn exact_f64(e: Exact) -> f64 {
    *e.numer() as f64 / *e.denom() as f64
}

fn window() -> TailWindow {
    TailWindow::new(100.0, 1000.0, 10.0).unwrap()
}

fn random_direction(rng: &mut ChaCha8Rng, bound: i64) -> Vec<i64> {
    loop {
        let v = vec![rng.random_range(-bound..=bound), rng.random_range(-bound..=bound)];
        if v.iter().any(|&a| a != 0) {
            return v;
        }
    }
}

#[test]
fn norms_of_sample_points() {
    assert_eq!(Lattice::new(2, Metric::L2).norm(&vec![3, 4]).unwrap(), 5.0);
    assert_eq!(Lattice::new(2, Metric::L1).norm(&vec![2, 1]).unwrap(), 3.0);
    assert_eq!(Lattice::new(2, Metric::Sup).norm(&vec![2, -7]).unwrap(), 7.0);
}

#[test]
fn half_line_ball() {
    let sp = Lattice::new(2, Metric::L1);
    let h = LatticeDirection::half_line(vec![1, 1]).unwrap().orbit();
    assert_eq!(ball_points(&sp, &h, 4.0).unwrap(), vec![vec![0, 0], vec![1, 1], vec![2, 2]]);
    let z = Lattice::new(1, Metric::L1);
    let even = LatticeDirection::half_line(vec![2]).unwrap();
    // The half-line through 2 meets ℤ in all of ℕ; the orbit of 2 itself is
    // the even numbers.
    assert_eq!(ball_points(&z, &even.orbit(), 2.0).unwrap(), vec![vec![0], vec![1], vec![2]]);
    assert_eq!(ball_points(&z, &CyclicOrbit::semigroup(vec![2]), 5.0).unwrap(), vec![vec![0], vec![2], vec![4]]);
}

#[test]
fn whole_lattice_ball_sizes() {
    let sp = Lattice::new(2, Metric::L1);
    // 2r² + 2r + 1 points in the l1 ball.
    assert_eq!(WholeLattice.slice(&sp, 5.0).unwrap().len(), 61);
    let shifted = Lattice::new(2, Metric::Sup).with_origin(vec![10, -4]);
    assert_eq!(WholeLattice.slice(&shifted, 2.0).unwrap().len(), 25);
}

#[test]
fn metric_axioms_on_random_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for metric in [Metric::L1, Metric::L2, Metric::Sup] {
        for dim in 1..=3 {
            let sp = Lattice::new(dim, metric);
            let mut pt = || (0..dim).map(|_| rng.random_range(-1000i64..=1000)).collect::<Vec<_>>();
            let triples: Vec<_> = (0..1000).map(|_| (pt(), pt(), pt())).collect();
            let tol = if metric == Metric::L2 { 1e-12 } else { 0.0 };
            assert_eq!(check_metric_axioms(&sp, &triples, tol).unwrap(), None);
        }
    }
}

#[test]
fn l1_worked_values_from_the_estimator() {
    let sp = Lattice::new(2, Metric::L1);
    let lines: Vec<_> = [vec![1, 0], vec![2, 1], vec![1, 1]]
        .into_iter()
        .map(|v| LatticeDirection::line(v).unwrap().orbit())
        .collect();
    let w = window();
    let s12 = s_estimate(&sp, &lines[0], &lines[1], &w).unwrap().value;
    let s23 = s_estimate(&sp, &lines[1], &lines[2], &w).unwrap().value;
    let s13 = s_estimate(&sp, &lines[0], &lines[2], &w).unwrap();
    assert!((s12 - 0.5).abs() <= 0.02, "{s12}");
    assert!((s23 - 1.0 / 3.0).abs() <= 0.02, "{s23}");
    assert!((s13.value - 1.0).abs() <= 0.02);
    assert!(s13.saturated);
}

#[test]
fn l2_diagonal_against_axis() {
    let sp = Lattice::new(2, Metric::L2);
    let a = LatticeDirection::half_line(vec![1, 0]).unwrap().orbit();
    let b = LatticeDirection::half_line(vec![1, 1]).unwrap().orbit();
    let s = s_estimate(&sp, &a, &b, &window()).unwrap().value;
    assert!((s - std::f64::consts::FRAC_1_SQRT_2).abs() <= 0.01, "{s}");
}

#[test]
fn random_l1_pairs_track_the_oracle() {
    let sp = Lattice::new(2, Metric::L1);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let (x, y) = (random_direction(&mut rng, 5), random_direction(&mut rng, 5));
        let exact = exact_f64(l1_ray_s_exact(&x, &y, Sense::HalfLine).unwrap());
        let hx = LatticeDirection::half_line(x.clone()).unwrap().orbit();
        let hy = LatticeDirection::half_line(y.clone()).unwrap().orbit();
        let est = s_estimate(&sp, &hx, &hy, &window()).unwrap().value;
        assert!(est >= exact - 0.02, "{x:?} {y:?}: {est} vs {exact}");
        worst = worst.max((est - exact).abs());
        assert!((est - exact).abs() <= 0.02, "{x:?} {y:?}: {est} vs {exact}");
    }
    eprintln!("worst l1 deviation {worst}");
}

#[test]
fn random_l2_pairs_track_the_closed_form() {
    let sp = Lattice::new(2, Metric::L2);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let (x, y) = (random_direction(&mut rng, 8), random_direction(&mut rng, 8));
        let exact = l2_line_s_exact(&x, &y, Sense::HalfLine).unwrap();
        let hx = LatticeDirection::half_line(x.clone()).unwrap().orbit();
        let hy = LatticeDirection::half_line(y.clone()).unwrap().orbit();
        let est = s_estimate(&sp, &hx, &hy, &window()).unwrap().value;
        worst = worst.max((est - exact).abs());
        assert!((est - exact).abs() <= 0.02, "{x:?} {y:?}: {est} vs {exact}");
    }
    eprintln!("worst l2 deviation {worst}");
}

#[test]
fn zigzag_ray_stays_away_from_every_half_line() {
    let sp = Lattice::new(2, Metric::L1);
    let w = window();
    let mut least: f64 = 1.0;
    for v in farey_directions(2, 3) {
        let h = LatticeDirection::half_line(v.clone()).unwrap().orbit();
        let s = s_estimate(&sp, &ZigZagRay, &h, &w).unwrap().value;
        least = least.min(s);
        assert!(s >= 0.1, "{v:?}: {s}");
    }
    eprintln!("closest half-line to the zigzag ray: {least}");
}

#[test]
fn zigzag_corners() {
    let p = ZigZagRay::path(14);
    assert!(p.contains(&vec![1, 0]) && p.contains(&vec![3, 1]) && p.contains(&vec![7, 3]) && p.contains(&vec![7, 7]));
    let sp = Lattice::new(2, Metric::L1);
    for (i, q) in p.iter().enumerate() {
        assert_eq!(sp.norm(q).unwrap(), i as f64);
    }
}

#[test]
fn one_dimensional_boundary_is_two_points() {
    let rep = boundary_check(1, 0, &BoundaryOptions::default()).unwrap();
    assert_eq!(rep.directions.len(), 2);
    assert_eq!(rep.components.len(), 2);
    assert!((rep.t_hat[0][1] - 1.0).abs() < 1e-12);
    assert_eq!(rep.antipodal_max, 0.0);
    assert_eq!(rep.projective_components.len(), 1);
}

#[test]
fn planar_boundary_is_a_circle() {
    for (a, b) in [(0, 2), (1, 1)] {
        let rep = boundary_check(a, b, &BoundaryOptions::default()).unwrap();
        assert_eq!(rep.directions.len(), 16);
        assert!(rep.max_deviation <= 0.03, "{}", rep.max_deviation);
        assert_eq!(rep.components.len(), 1);
        assert!(rep.antipodal_max <= 0.03);
        assert_eq!(rep.projective_components.len(), 1);
    }
}

#[test]
fn spatial_boundary_is_a_sphere() {
    let rep = boundary_check(0, 3, &BoundaryOptions::default()).unwrap();
    assert_eq!(rep.directions.len(), 98);
    assert!(rep.max_deviation <= 0.03, "{}", rep.max_deviation);
    assert_eq!(rep.components.len(), 1);
    assert!(boundary_check(2, 2, &BoundaryOptions::default()).is_err());
}

#[test]
fn shifted_reference_point() {
    let w = window();
    for metric in [Metric::L1, Metric::L2] {
        let base = Lattice::new(2, metric);
        let moved = Lattice::new(2, metric).with_origin(vec![17, -9]);
        for (x, y) in [(vec![1, 0], vec![2, 1]), (vec![2, 1], vec![1, 1]), (vec![1, 3], vec![-2, 1])] {
            let hx = LatticeDirection::half_line(x).unwrap().orbit();
            let hy = LatticeDirection::half_line(y).unwrap().orbit();
            let a = s_estimate(&base, &hx, &hy, &w).unwrap().value;
            let b = s_estimate(&moved, &hx, &hy, &w).unwrap().value;
            // A shift by c moves every ratio by at most about 2c/r_min.
            assert!((a - b).abs() <= 2.0 * 26.0 / w.r_min, "{a} {b}");
            let far = TailWindow::new(1000.0, 10000.0, 10.0).unwrap();
            let a2 = s_estimate(&base, &hx, &hy, &far).unwrap().value;
            let b2 = s_estimate(&moved, &hx, &hy, &far).unwrap().value;
            assert!((a2 - b2).abs() <= (a - b).abs() + 1e-3);
        }
    }
}

#[test]
fn l1_to_l2_sandwich() {
    let l1 = Lattice::new(2, Metric::L1);
    let l2 = Lattice::new(2, Metric::L2);
    let q = 2f64.sqrt();
    let w = window();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..20 {
        let (x, y) = (random_direction(&mut rng, 4), random_direction(&mut rng, 4));
        let hx = LatticeDirection::half_line(x).unwrap().orbit();
        let hy = LatticeDirection::half_line(y).unwrap().orbit();
        let f = || QuasiIsometry::new(|p: &Vec<i64>| p.clone(), q);
        let fx = pushforward(&l1, &l2, f(), hx.clone()).unwrap();
        let fy = pushforward(&l1, &l2, f(), hy.clone()).unwrap();
        let s1 = s_plus_estimate(&l1, &hx, &hy, &w).unwrap().value;
        let s2 = s_plus_estimate(&l2, &fx, &fy, &w).unwrap().value;
        assert!(s1 / (q * q) - 0.03 <= s2 && s2 <= q * q * s1 + 0.03, "{s1} {s2}");
    }
}

#[test]
fn wide_cones_cover_the_lattice() {
    for metric in [Metric::L1, Metric::L2, Metric::Sup] {
        let sp = Lattice::new(2, metric);
        for v in [vec![1, 0], vec![2, 1], vec![-1, 3]] {
            let h = LatticeDirection::half_line(v).unwrap().orbit();
            let p = ConeParams::new(1.1, 0.0).unwrap();
            assert!(cone_contains(&sp, &WholeLattice, &h, p, 20.0, 25.0).unwrap());
        }
    }
}

#[test]
fn coarse_subsets_give_the_same_estimates() {
    // S = <(4,2)>+ ⊆ T = <(2,1)>+ ⊆ 0·S + 3.
    let sp = Lattice::new(2, Metric::L1);
    let w = window();
    let s = CyclicOrbit::semigroup(vec![4, 2]);
    let t = CyclicOrbit::semigroup(vec![2, 1]);
    assert!(cone_contains(&sp, &t, &s, ConeParams::new(0.0, 3.0).unwrap(), 200.0, 10.0).unwrap());
    for r in [vec![1, 0], vec![0, 1], vec![1, 1], vec![-3, 1]] {
        let r = LatticeDirection::half_line(r).unwrap().orbit();
        let a = s_estimate(&sp, &r, &s, &w).unwrap().value;
        let b = s_estimate(&sp, &r, &t, &w).unwrap().value;
        assert!((a - b).abs() <= 3.0 / w.r_min, "{a} {b}");
    }
}

#[test]
fn weak_triangle_on_random_lattice_triples() {
    let sp = Lattice::new(2, Metric::L1);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let w = window();
    for _ in 0..10 {
        let sets: Vec<_> = (0..3)
            .map(|_| LatticeDirection::half_line(random_direction(&mut rng, 4)).unwrap().orbit())
            .collect();
        let rep = weak_triangle_check(&sp, &sets[0], &sets[1], &sets[2], &w, 0.02).unwrap();
        assert!(rep.weak && rep.t, "{rep:?}");
    }
}

#[test]
fn neighborhood_of_the_axis_in_l2() {
    let sp = Lattice::new(2, Metric::L2);
    let xi = LatticeDirection::half_line(vec![1, 0]).unwrap().orbit();
    let zeta = LatticeDirection::half_line(vec![1, 1]).unwrap().orbit();
    let w = window();
    assert!(neighborhood_contains_point(&sp, &xi, 0.5, 10.0, &vec![40, 0], 1.0, 10.0).unwrap());
    assert!(!neighborhood_contains_set(&sp, &xi, 0.5, &zeta, &w, 0.02).unwrap());
    assert!(neighborhood_contains_set(&sp, &xi, 0.8, &zeta, &w, 0.02).unwrap());
}
