use nilpotent_lie::*;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn all_algebras() -> Vec<GradedLieAlgebra> {
    let mut v: Vec<GradedLieAlgebra> = BUNDLED.iter().map(|n| bundled(n).unwrap()).collect();
    v.push(upper_triangular(5));
    v.push(upper_triangular(6));
    v
}

#[test]
fn heisenberg_product() {
    let h = h3();
    let p = bch_product(&h, &h.e(0), &h.e(1)).unwrap();
    assert_eq!(p, LieVector { coords: vec![int(1), int(1), rat(1, 2)] });
}

#[test]
fn associativity_on_random_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for alg in all_algebras() {
        let count = if alg.class() > 3 { 40 } else { 200 };
        for _ in 0..count {
            let x = random_from_layer(&alg, &mut rng, 1);
            let y = random_from_layer(&alg, &mut rng, 1);
            let z = random_from_layer(&alg, &mut rng, 1);
            let l = bch_product(&alg, &bch_product(&alg, &x, &y).unwrap(), &z).unwrap();
            let r = bch_product(&alg, &x, &bch_product(&alg, &y, &z).unwrap()).unwrap();
            assert_eq!(l, r, "{} not associative", alg.name());
        }
    }
}

#[test]
fn inverses_and_powers() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for alg in all_algebras() {
        for _ in 0..50 {
            let x = random_from_layer(&alg, &mut rng, 1);
            assert!(bch_product(&alg, &x, &inverse(&x)).unwrap().is_zero());
            let mut acc = alg.zero();
            for n in 1..=4 {
                acc = bch_product(&alg, &acc, &x).unwrap();
                assert_eq!(acc, power(&x, n));
            }
        }
    }
    let h = h3();
    let x = &h.e(0) + &h.e(2);
    let cube = bch_product(&h, &bch_product(&h, &x, &x).unwrap(), &x).unwrap();
    assert_eq!(cube, h.vector(&[3, 0, 3]).unwrap());
}

#[test]
fn first_layer_is_additive() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for alg in all_algebras() {
        for _ in 0..50 {
            let x = random_from_layer(&alg, &mut rng, 1);
            let y = random_from_layer(&alg, &mut rng, 1);
            let p = bch_product(&alg, &x, &y).unwrap();
            assert_eq!(alg.project(&p, 1), &alg.project(&x, 1) + &alg.project(&y, 1));
        }
    }
}

#[test]
fn class_beyond_the_table_is_rejected() {
    let n7 = upper_triangular(7);
    assert!(matches!(
        bch_product(&n7, &n7.e(0), &n7.e(1)),
        Err(LieError::ClassExceedsTable { class: 6, max: 5 })
    ));
}

#[test]
fn scaled_product_matches_direct_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for alg in all_algebras() {
        let u = random_from_layer(&alg, &mut rng, 1);
        let v = random_from_layer(&alg, &mut rng, 1);
        let p = ScaledProduct::new(&alg, &u, &v).unwrap();
        for (s, t) in [(0, 0), (1, 1), (3, -2), (-5, 7)] {
            let direct = bch_product(&alg, &u.scale_int(s), &v.scale_int(t)).unwrap();
            assert_eq!(p.at(&int(s), &int(t)), direct);
        }
    }
}

#[test]
fn shift_expansion_and_q() {
    let e = inverse_shift_expansion(3);
    // y⁻¹(y+z) = z − ½(y,z) + (2/12)(y,y,z) + (1/12)(z,y,z) + …
    assert_eq!(e["z"], int(1));
    assert_eq!(e["yz"], rat(-1, 2));
    assert_eq!(e["yyz"], rat(1, 6));
    assert_eq!(e["zyz"], rat(1, 12));
    assert_eq!(e.len(), 4);
    assert_eq!(q_constant(1), int(1));
    assert_eq!(q_constant(2), int(2));
    assert_eq!(q_constant(3), int(4));
    assert!(q_constant(5) >= q_constant(4));
}

#[test]
fn shift_expansion_evaluates_to_the_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for alg in all_algebras() {
        let e = inverse_shift_expansion(alg.class());
        for _ in 0..10 {
            let y = random_from_layer(&alg, &mut rng, 1);
            let z = random_from_layer(&alg, &mut rng, 1);
            let mut sum = alg.zero();
            for (w, q) in &e {
                let xs: Vec<LieVector> = w.chars().map(|c| if c == 'y' { y.clone() } else { z.clone() }).collect();
                sum = &sum + &alg.kfold(&xs).unwrap().scale(q);
            }
            assert_eq!(sum, bch_product(&alg, &inverse(&y), &(&y + &z)).unwrap());
        }
    }
}

// Independent oracle: strictly upper triangular matrices, where exp and log
// are finite sums.

type Mat = Vec<Vec<Rational>>;

fn zero(n: usize) -> Mat {
    vec![vec![Rational::zero(); n]; n]
}

fn mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let mut c = zero(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                c[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    c
}

fn add_scaled(a: &mut Mat, b: &Mat, t: &Rational) {
    for (ra, rb) in a.iter_mut().zip(b) {
        for (x, y) in ra.iter_mut().zip(rb) {
            *x += y * t;
        }
    }
}

fn exp(x: &Mat) -> Mat {
    let n = x.len();
    let mut out = zero(n);
    let mut term = zero(n);
    for i in 0..n {
        term[i][i] = Rational::one();
    }
    let mut fact = Rational::one();
    for k in 0..n {
        add_scaled(&mut out, &term, &(Rational::one() / &fact));
        term = mul(&term, x);
        fact *= int(k as i64 + 1);
    }
    out
}

fn log(g: &Mat) -> Mat {
    let n = g.len();
    let mut nil = g.clone();
    for i in 0..n {
        nil[i][i] -= Rational::one();
    }
    let mut out = zero(n);
    let mut term = nil.clone();
    for k in 1..n {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        add_scaled(&mut out, &term, &rat(sign, k as i64));
        term = mul(&term, &nil);
    }
    out
}

fn to_matrix(alg: &GradedLieAlgebra, n: usize, v: &LieVector) -> Mat {
    let mut m = zero(n);
    for (idx, label) in alg.labels().iter().enumerate() {
        let b = label.as_bytes();
        let (i, j) = ((b[1] - b'1') as usize, (b[2] - b'1') as usize);
        m[i][j] = v.coords[idx].clone();
    }
    m
}

#[test]
fn matches_matrix_exponentials() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for n in [3, 4, 5, 6] {
        let alg = upper_triangular(n);
        for _ in 0..20 {
            let x = random_from_layer(&alg, &mut rng, 1);
            let y = random_from_layer(&alg, &mut rng, 1);
            let want = log(&mul(&exp(&to_matrix(&alg, n, &x)), &exp(&to_matrix(&alg, n, &y))));
            let got = to_matrix(&alg, n, &bch_product(&alg, &x, &y).unwrap());
            assert_eq!(got, want, "n{n}");
        }
    }
}
