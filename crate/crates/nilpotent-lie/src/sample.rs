use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::algebra::{int, GradedLieAlgebra, LieVector, Rational};

/// A rational `p/q` with `|p| ≤ num`, `1 ≤ q ≤ den`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R, num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(rng.random_range(-num..=num)), BigInt::from(rng.random_range(1..=den)))
}

/// Random coordinates in layers `from..=c`; zero below.
pub fn random_from_layer<R: Rng + ?Sized>(alg: &GradedLieAlgebra, rng: &mut R, from: usize) -> LieVector {
    let mut v = alg.zero();
    for n in from..=alg.class() {
        for i in alg.layer_range(n) {
            v.coords[i] = random_rational(rng, 12, 6);
        }
    }
    v
}

/// Random nonzero vector of the single layer `V_n`.
pub fn random_in_layer<R: Rng + ?Sized>(alg: &GradedLieAlgebra, rng: &mut R, n: usize) -> LieVector {
    loop {
        let mut v = alg.zero();
        for i in alg.layer_range(n) {
            v.coords[i] = random_rational(rng, 12, 6);
        }
        if !v.is_zero() {
            return v;
        }
    }
}

/// Random element, with random layers switched off and dilated by `2^j`
/// for `j ∈ [−4, 8]` so that small and large scales are both covered.
pub fn random_scaled<R: Rng + ?Sized>(alg: &GradedLieAlgebra, rng: &mut R) -> LieVector {
    let mut v = random_from_layer(alg, rng, 1);
    for n in 1..=alg.class() {
        if rng.random_bool(0.25) {
            for i in alg.layer_range(n) {
                v.coords[i] = Rational::zero();
            }
        }
    }
    let j: i32 = rng.random_range(-4..=8);
    let t = if j >= 0 {
        int(1i64 << j)
    } else {
        BigRational::new(BigInt::one(), BigInt::from(1i64 << (-j)))
    };
    alg.dilate(&t, &v)
}

/// A rational point of the unit sphere of `ℝᵈ`, by inverse stereographic
/// projection of a random rational point of `ℝᵈ⁻¹`.
pub fn random_unit<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Vec<Rational> {
    if d == 1 {
        return vec![if rng.random_bool(0.5) { int(1) } else { int(-1) }];
    }
    let u: Vec<Rational> = (0..d - 1).map(|_| random_rational(rng, 8, 4)).collect();
    let s: Rational = u.iter().map(|a| a * a).sum();
    let denom = &s + int(1);
    let mut out: Vec<Rational> = u.iter().map(|a| a * int(2) / &denom).collect();
    out.push((s - int(1)) / denom);
    out
}
