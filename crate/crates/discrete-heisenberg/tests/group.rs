use discrete_heisenberg::{LieGauge, H};
use nilpotent_lie::{bch_product, h3, rat, Gauge, LieVector};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn elem() -> impl Strategy<Value = H> {
    (-50i64..=50, -50i64..=50, -500i64..=500).prop_map(|(a, b, c)| H::new(a, b, c))
}

fn log(g: &H) -> LieVector {
    LieVector { coords: vec![rat(g.a, 1), rat(g.b, 1), rat(g.log_central_doubled(), 2)] }
}

#[test]
fn product_examples() {
    assert_eq!(H::new(1, 0, 0).mul(&H::new(0, 1, 0)), H::new(1, 1, 1));
    assert_eq!(H::new(0, 1, 0).mul(&H::new(1, 0, 0)), H::new(1, 1, 0));
    assert_eq!(H::new(1, 1, 0).pow(3), H::new(3, 3, 3));
    assert_eq!(H::new(2, 1, 0).pow(0), H::IDENTITY);
    let g = H::new(3, -2, 7);
    assert_eq!(g.mul(&g.inverse()), H::IDENTITY);
    assert_eq!(g.pow(-2), g.inverse().pow(2));
}

#[test]
fn parse_and_display() {
    let g: H = "(1,-2,3)".parse().unwrap();
    assert_eq!(g, H::new(1, -2, 3));
    assert_eq!(g.to_string(), "(1,-2,3)");
    assert_eq!(" 4, 5 ,6".parse::<H>().unwrap(), H::new(4, 5, 6));
    assert!("1,2".parse::<H>().is_err());
    assert!("1,x,2".parse::<H>().is_err());
}

#[test]
fn log_map_carries_products_to_bch() {
    let h = h3();
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    let mut draw = || H::new(rng.random_range(-50..=50), rng.random_range(-50..=50), rng.random_range(-500..=500));
    for _ in 0..500 {
        let (x, y) = (draw(), draw());
        let lhs = log(&x.mul(&y));
        let rhs = bch_product(&h, &log(&x), &log(&y)).unwrap();
        assert_eq!(lhs, rhs, "{x} {y}");
    }
}

#[test]
fn float_gauge_matches_the_lie_gauge() {
    let h = h3();
    let g = Gauge::unit(&h);
    let q = LieGauge::default();
    for x in [H::new(3, 4, 0), H::new(0, 0, 9), H::new(2, 2, 2), H::new(-5, 1, 40)] {
        assert!((q.value(&x) - g.value_f64(&h, &log(&x))).abs() < 1e-12, "{x}");
    }
    assert_eq!(q.value(&H::new(3, 4, 6)), 5.0);
    assert_eq!(q.value(&H::new(0, 0, 8)), 8f64.sqrt());
}

proptest! {
    #[test]
    fn group_axioms(x in elem(), y in elem(), z in elem()) {
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&H::IDENTITY), x);
        prop_assert_eq!(x.inverse().mul(&x), H::IDENTITY);
        prop_assert_eq!(H::between(&x, &y), x.inverse().mul(&y));
    }

    #[test]
    fn closed_form_power(x in elem(), n in -20i64..=20) {
        let mut acc = H::IDENTITY;
        let step = if n < 0 { x.inverse() } else { x };
        for _ in 0..n.abs() {
            acc = acc.mul(&step);
        }
        prop_assert_eq!(x.pow(n), acc);
    }
}
