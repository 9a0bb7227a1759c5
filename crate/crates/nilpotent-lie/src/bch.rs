use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::algebra::{int, rat, GradedLieAlgebra, LieVector, Rational};
use crate::LieError;

/// Highest bracket degree in the shipped coefficient table.
pub const BCH_MAX_DEGREE: usize = 5;

/// `log(eˣeʸ)` through degree 5 as right-nested brackets: each entry is
/// `(numerator, denominator, word)` where the word `w₁…w_k` stands for
/// `(w₁, (w₂, …, w_k))`.
pub const BCH_TABLE: &[(i64, i64, &str)] = &[
    (1, 1, "x"),
    (1, 1, "y"),
    (1, 2, "xy"),
    (1, 12, "xxy"),
    (-1, 12, "yxy"),
    (-1, 24, "yxxy"),
    (-1, 720, "yyyyx"),
    (-1, 720, "xxxxy"),
    (1, 360, "xyyyx"),
    (1, 360, "yxxxy"),
    (1, 120, "yxyxy"),
    (1, 120, "xyxyx"),
];

fn check_class(alg: &GradedLieAlgebra) -> Result<(), LieError> {
    if alg.class() > BCH_MAX_DEGREE {
        return Err(LieError::ClassExceedsTable { class: alg.class(), max: BCH_MAX_DEGREE });
    }
    Ok(())
}

fn word_bracket(alg: &GradedLieAlgebra, word: &str, x: &LieVector, y: &LieVector) -> LieVector {
    let pick = |c: u8| if c == b'x' { x } else { y };
    let bytes = word.as_bytes();
    let mut v = pick(bytes[bytes.len() - 1]).clone();
    for &c in bytes[..bytes.len() - 1].iter().rev() {
        if v.is_zero() {
            break;
        }
        v = alg.br(pick(c), &v);
    }
    v
}

/// The group product `x·y` on `𝔤`.
pub fn bch_product(alg: &GradedLieAlgebra, x: &LieVector, y: &LieVector) -> Result<LieVector, LieError> {
    check_class(alg)?;
    alg.check(x)?;
    alg.check(y)?;
    let mut out = alg.zero();
    for &(n, d, word) in BCH_TABLE {
        if word.len() > alg.class() {
            continue;
        }
        let v = word_bracket(alg, word, x, y);
        alg.accumulate(&mut out, &v, &rat(n, d));
    }
    Ok(out)
}

/// `x⁻¹ = −x`.
pub fn inverse(x: &LieVector) -> LieVector {
    -x
}

/// `xⁿ = n·x`.
pub fn power(x: &LieVector, n: i64) -> LieVector {
    x.scale_int(n)
}

/// The product `(s·u)·(t·v)` as a polynomial in `s, t`: the terms of
/// bidegree `(a, b)` collect the brackets with `a` copies of `u` and `b`
/// copies of `v`.
#[derive(Debug, Clone)]
pub struct ScaledProduct {
    terms: Vec<(u32, u32, LieVector)>,
}

impl ScaledProduct {
    pub fn new(alg: &GradedLieAlgebra, u: &LieVector, v: &LieVector) -> Result<Self, LieError> {
        check_class(alg)?;
        alg.check(u)?;
        alg.check(v)?;
        let mut by_degree: BTreeMap<(u32, u32), LieVector> = BTreeMap::new();
        for &(n, d, word) in BCH_TABLE {
            if word.len() > alg.class() {
                continue;
            }
            let a = word.bytes().filter(|&c| c == b'x').count() as u32;
            let b = word.len() as u32 - a;
            let w = word_bracket(alg, word, u, v);
            let slot = by_degree.entry((a, b)).or_insert_with(|| alg.zero());
            alg.accumulate(slot, &w, &rat(n, d));
        }
        let terms = by_degree.into_iter().filter(|(_, v)| !v.is_zero()).map(|((a, b), v)| (a, b, v)).collect();
        Ok(ScaledProduct { terms })
    }

    /// `y⁻ⁿxᵐ = (n·(−y))·(m·x)`.
    pub fn for_powers(alg: &GradedLieAlgebra, y: &LieVector, x: &LieVector) -> Result<Self, LieError> {
        Self::new(alg, &-y, x)
    }

    /// Collapses the first variable at `s`: the result evaluates at `t`.
    pub fn fix_first(&self, s: &Rational) -> Vec<(u32, LieVector)> {
        let mut out: BTreeMap<u32, LieVector> = BTreeMap::new();
        for (a, b, v) in &self.terms {
            let f = pow(s, *a);
            let scaled = v.scale(&f);
            match out.get_mut(b) {
                Some(acc) => *acc = &*acc + &scaled,
                None => {
                    out.insert(*b, scaled);
                }
            }
        }
        out.into_iter().collect()
    }

    pub fn at(&self, s: &Rational, t: &Rational) -> LieVector {
        eval_in(&self.fix_first(s), t)
    }
}

/// `Σ t^b·w_b`.
pub fn eval_in(poly: &[(u32, LieVector)], t: &Rational) -> LieVector {
    let dim = poly.first().map_or(0, |(_, v)| v.dim());
    let mut out = LieVector::zeros(dim);
    for (b, w) in poly {
        let f = pow(t, *b);
        for (o, c) in out.coords.iter_mut().zip(&w.coords) {
            if !c.is_zero() {
                *o += c * &f;
            }
        }
    }
    out
}

fn pow(s: &Rational, k: u32) -> Rational {
    let mut r = Rational::one();
    for _ in 0..k {
        r *= s;
    }
    r
}

/// Writes `y⁻¹(y+z)` as a combination of right-nested brackets in `y, z`,
/// obtained by substituting `x ↦ −y`, `y ↦ y+z` into the table and
/// expanding. Words of degree above `class` and words whose innermost
/// bracket repeats a letter are dropped, since they vanish.
pub fn inverse_shift_expansion(class: usize) -> BTreeMap<String, Rational> {
    let mut out: BTreeMap<String, Rational> = BTreeMap::new();
    for &(n, d, word) in BCH_TABLE {
        if word.len() > class {
            continue;
        }
        let mut partial: Vec<(String, Rational)> = vec![(String::new(), rat(n, d))];
        for c in word.chars() {
            let mut next = Vec::new();
            for (w, q) in partial {
                if c == 'x' {
                    next.push((format!("{w}y"), -q));
                } else {
                    next.push((format!("{w}y"), q.clone()));
                    next.push((format!("{w}z"), q));
                }
            }
            partial = next;
        }
        for (w, q) in partial {
            *out.entry(w).or_insert_with(Rational::zero) += q;
        }
    }
    out.retain(|w, q| {
        let b = w.as_bytes();
        !q.is_zero() && (b.len() == 1 || b[b.len() - 1] != b[b.len() - 2])
    });
    out
}

/// `Q = Σ max(1, |q_{k,j}|)` over [`inverse_shift_expansion`].
pub fn q_constant(class: usize) -> Rational {
    inverse_shift_expansion(class).values().map(|q| q.abs().max(int(1))).sum()
}
