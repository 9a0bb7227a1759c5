use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{int, GradedLieAlgebra, LieVector, Rational};
use crate::angles::{s_plus_additive_exact, s_plus_mult_estimate, Span};
use crate::bch::{bch_product, q_constant};
use crate::gauge::{tolerance, Gauge, Root};
use crate::sample::{random_from_layer, random_in_layer, random_rational, random_scaled, random_unit};
use crate::LieError;

/// Outcome of one sampled inequality.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyRow {
    pub name: String,
    pub instances: usize,
    pub failures: usize,
    /// Smallest `right − left` seen; negative on failure.
    pub min_margin: f64,
    pub first_failure: Option<String>,
}

impl PropertyRow {
    fn new(name: &str) -> Self {
        PropertyRow { name: name.into(), instances: 0, failures: 0, min_margin: f64::INFINITY, first_failure: None }
    }

    /// Records `left ≤ right` up to float slack.
    fn record(&mut self, left: f64, right: f64, what: impl FnOnce() -> String) {
        self.instances += 1;
        let margin = right - left;
        self.min_margin = self.min_margin.min(margin);
        if margin < -tolerance(right.abs().max(left.abs())) {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(what());
            }
        }
    }

    fn record_exact(&mut self, holds: bool, what: impl FnOnce() -> String) {
        self.instances += 1;
        if holds {
            self.min_margin = self.min_margin.min(0.0);
        } else {
            self.failures += 1;
            self.min_margin = f64::NEG_INFINITY;
            if self.first_failure.is_none() {
                self.first_failure = Some(what());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

fn show(v: &LieVector) -> String {
    let parts: Vec<String> = v.coords.iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn random_factor<R: Rng>(rng: &mut R, at_least_one: bool) -> Rational {
    let a = random_rational(rng, 64, 16).abs();
    if at_least_one { a + int(1) } else { &a / (&a + int(1)) }
}

fn pow_f(x: f64, e: f64) -> f64 {
    if x == 0.0 { 0.0 } else { x.powf(e) }
}

/// Gauge properties on `samples` seeded draws each: symmetry, the triangle
/// inequality for `+`, the two scaling bounds, homogeneity under `δ_t`,
/// `⟦xy⟧ ≤ ⟦x⟧ + ⟦y⟧ + 1`, and the bound on iterated brackets that
/// follows from it.
///
/// The last two presuppose a rescaled gauge.
pub fn gauge_suite(alg: &GradedLieAlgebra, gauge: &Gauge, samples: usize, seed: u64) -> Result<Vec<PropertyRow>, LieError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = alg.class();
    let g = |x: &LieVector| gauge.value_f64(alg, x);

    let mut sym = PropertyRow::new("symmetric");
    let mut sub = PropertyRow::new("subadditive");
    let mut up = PropertyRow::new("scaling above one");
    let mut down = PropertyRow::new("scaling below one");
    let mut hom = PropertyRow::new("homogeneous");
    let mut tri = PropertyRow::new("product triangle");
    let mut nest = PropertyRow::new("bracket growth");
    for _ in 0..samples {
        let x = random_scaled(alg, &mut rng);
        let y = random_scaled(alg, &mut rng);
        let gx = g(&x);
        let gy = g(&y);

        sym.record_exact(gauge.value(alg, &-&x) == gauge.value(alg, &x), || show(&x));

        sub.record(g(&(&x + &y)), gx + gy, || format!("{} {}", show(&x), show(&y)));

        let n = rng.random_range(1..=c);
        let xn = random_from_layer(alg, &mut rng, n);
        let a = random_factor(&mut rng, true);
        let af = a.to_f64().unwrap_or(f64::NAN);
        up.record(g(&xn.scale(&a)), af.powf(1.0 / n as f64) * g(&xn), || format!("{} by {a}", show(&xn)));

        let b = random_factor(&mut rng, false);
        let bf = b.to_f64().unwrap_or(f64::NAN);
        down.record(g(&x.scale(&b)), pow_f(bf, 1.0 / c as f64) * gx, || format!("{} by {b}", show(&x)));

        let t = random_rational(&mut rng, 40, 8).abs();
        let r = gauge.value(alg, &x);
        let scaled = Root::new(&r.radicand * Pow::pow(&t, r.degree), r.degree);
        hom.record_exact(gauge.value(alg, &alg.dilate(&t, &x)) == scaled, || format!("{} by {t}", show(&x)));

        let xy = bch_product(alg, &x, &y)?;
        tri.record(g(&xy), gx + gy + 1.0, || format!("{} {}", show(&x), show(&y)));

        let k = rng.random_range(2..=c + 1);
        let xs: Vec<LieVector> = (0..k).map(|_| random_scaled(alg, &mut rng)).collect();
        let lhs = g(&alg.kfold(&xs)?);
        let sum: f64 = xs.iter().map(g).sum();
        let two = |p: usize| (1u64 << p) as f64;
        nest.record(lhs, two(k - 1) * sum + two(k), || xs.iter().map(show).collect::<Vec<_>>().join(" "));
    }
    Ok(vec![sym, sub, up, down, hom, tri, nest])
}

/// The three inequalities relating products of powers to the gauge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GrowthBound {
    /// `⟦y⁻ⁿxⁿ⟧ ≤ 2^{c−1}Q(c⟦x⟧+c⟦y⟧+2)n^{(1−1/c)/i}` when `x, y ∈ 𝔤_i`
    /// agree modulo `𝔤_{i+1}`.
    SameCoset,
    /// `⟦y⁻ⁿxⁿ⟧ ≤ MQα^{i/c}⟦xⁿ⟧` for `x, y ∈ V_i`, `⟦x⟧ ≥ ⟦y⟧ = 1`,
    /// `⟦x−y⟧ = α⟦x⟧`.
    SameLayer,
    /// `s⁺_a ≤ s⁺_m ≤ MQ(s⁺_a)^{i/c}` for `x, y ∈ V₁`.
    Sandwich,
}

impl GrowthBound {
    pub fn name(self) -> &'static str {
        match self {
            GrowthBound::SameCoset => "same-coset growth",
            GrowthBound::SameLayer => "same-layer growth",
            GrowthBound::Sandwich => "additive/multiplicative sandwich",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundParams {
    pub samples: usize,
    /// Largest power `n` in the growth bounds.
    pub n_max: u64,
    pub seed: u64,
    /// Horizon and cap of the multiplicative estimate in the sandwich.
    pub horizon: u64,
    pub cap: f64,
    /// Allowance for the finite-window error on the sandwich's upper side.
    pub window_slack: f64,
}

impl Default for BoundParams {
    fn default() -> Self {
        BoundParams { samples: 500, n_max: 500, seed: 11, horizon: 100, cap: 10.0, window_slack: 0.02 }
    }
}

/// Constants used by the bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundConstants {
    pub m: f64,
    pub q: f64,
}

pub fn bound_constants(alg: &GradedLieAlgebra, gauge: &Gauge) -> BoundConstants {
    BoundConstants { m: gauge.bracket_bound(alg), q: q_constant(alg.class()).to_f64().unwrap_or(f64::NAN) }
}

/// Checks one bound on seeded samples under a rescaled `gauge`.
pub fn growth_bounds_check(
    alg: &GradedLieAlgebra,
    gauge: &Gauge,
    which: GrowthBound,
    p: &BoundParams,
) -> Result<PropertyRow, LieError> {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let k = bound_constants(alg, gauge);
    let c = alg.class();
    let cf = c as f64;
    let g = |x: &LieVector| gauge.value_f64(alg, x);
    let mut row = PropertyRow::new(which.name());
    match which {
        GrowthBound::SameCoset => {
            for _ in 0..p.samples {
                let i = rng.random_range(1..=c);
                let x = loop {
                    let v = random_from_layer(alg, &mut rng, i);
                    if alg.depth(&v) == Some(i) {
                        break v;
                    }
                };
                let z = if i < c { random_from_layer(alg, &mut rng, i + 1) } else { alg.zero() };
                let y = &x - &z;
                let n = rng.random_range(0..=p.n_max);
                let lhs = g(&power_product(alg, &x, &y, n)?);
                let nf = n as f64;
                let rhs = 2f64.powi(c as i32 - 1) * k.q * (cf * g(&x) + cf * g(&y) + 2.0) * pow_f(nf, (1.0 - 1.0 / cf) / i as f64);
                row.record(lhs, rhs, || format!("x={} y={} n={n}", show(&x), show(&y)));
            }
        }
        GrowthBound::SameLayer => {
            for s in 0..p.samples {
                let i = rng.random_range(1..=c);
                let (x, y, alpha) = same_layer_pair(alg, gauge, &mut rng, i, s % 10 == 0);
                let n = rng.random_range(0..=p.n_max);
                let lhs = g(&power_product(alg, &x, &y, n)?);
                let gxn = g(&x.scale_int(n as i64));
                let rhs = k.m * k.q * pow_f(alpha, i as f64 / cf) * gxn;
                row.record(lhs, rhs, || format!("x={} y={} n={n} alpha={alpha}", show(&x), show(&y)));
            }
        }
        GrowthBound::Sandwich => {
            let v1 = alg.layers()[0];
            for _ in 0..p.samples {
                let pick = |rng: &mut ChaCha8Rng| loop {
                    let mut v = alg.zero();
                    for j in 0..v1 {
                        v.coords[j] = int(rng.random_range(-4..=4));
                    }
                    if !v.is_zero() {
                        break v;
                    }
                };
                let x = pick(&mut rng);
                let y = pick(&mut rng);
                let sa = s_plus_additive_exact(alg, &x, &y, Span::Positive)?.to_f64();
                let sm = s_plus_mult_estimate(alg, gauge, &x, &y, p.horizon, p.cap)?.value;
                let what = || format!("x={} y={} s_a={sa} s_m={sm}", show(&x), show(&y));
                row.record(sa, sm, what);
                row.record(sm, k.m * k.q * pow_f(sa, 1.0 / cf) + p.window_slack, what);
            }
        }
    }
    Ok(row)
}

/// `y⁻ⁿxⁿ`.
fn power_product(alg: &GradedLieAlgebra, x: &LieVector, y: &LieVector, n: u64) -> Result<LieVector, LieError> {
    let n = n as i64;
    bch_product(alg, &y.scale_int(-n), &x.scale_int(n))
}

/// `x, y ∈ V_i` with `⟦y⟧ = 1 ≤ ⟦x⟧` and `α = ⟦x−y⟧/⟦x⟧ ≤ 1`; `x = y`
/// when `equal` is set.
fn same_layer_pair<R: Rng>(alg: &GradedLieAlgebra, gauge: &Gauge, rng: &mut R, i: usize, equal: bool) -> (LieVector, LieVector, f64) {
    let lambda = gauge.scales()[i - 1].clone();
    let r = alg.layer_range(i);
    let mut y = alg.zero();
    for (slot, u) in r.clone().zip(random_unit(rng, r.len())) {
        y.coords[slot] = u / &lambda;
    }
    if equal {
        return (y.clone(), y, 0.0);
    }
    loop {
        let mut x = random_in_layer(alg, rng, i);
        while gauge.layer_norm_sq(alg, &x, i) < int(1) {
            x = x.scale_int(2);
        }
        let gx = gauge.value_f64(alg, &x);
        let alpha = gauge.value_f64(alg, &(&x - &y)) / gx;
        if alpha <= 1.0 {
            return (x, y, alpha);
        }
        // Pull x towards y until the pair qualifies.
        let mid = &(&x + &y).scale(&BigRational::new(BigInt::from(1), BigInt::from(2)));
        if gauge.layer_norm_sq(alg, mid, i) >= int(1) {
            let a = gauge.value_f64(alg, &(mid - &y)) / gauge.value_f64(alg, mid);
            if a <= 1.0 {
                return (mid.clone(), y, a);
            }
        }
    }
}
