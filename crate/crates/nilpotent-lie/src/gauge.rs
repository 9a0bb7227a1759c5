use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{GradedLieAlgebra, LieVector, Rational};
use crate::bch::bch_product;
use crate::sample::random_scaled;
use crate::LieError;

/// `radicand^(1/degree)` with a nonnegative rational radicand, compared
/// exactly by raising both sides to a common power.
#[derive(Debug, Clone)]
pub struct Root {
    pub radicand: Rational,
    pub degree: u32,
}

impl Root {
    pub fn new(radicand: Rational, degree: u32) -> Self {
        assert!(degree >= 1 && !radicand.is_negative());
        Root { radicand, degree }
    }

    pub fn rational(q: Rational) -> Self {
        Self::new(q, 1)
    }

    pub fn zero() -> Self {
        Self::rational(Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.radicand.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        let r = self.radicand.to_f64().unwrap_or(f64::NAN);
        match self.degree {
            1 => r,
            2 => r.sqrt(),
            d => r.powf(1.0 / d as f64),
        }
    }
}

impl PartialEq for Root {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}

impl Eq for Root {}

impl PartialOrd for Root {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Root {
    fn cmp(&self, o: &Self) -> Ordering {
        if self.degree == o.degree {
            return self.radicand.cmp(&o.radicand);
        }
        let a: BigRational = Pow::pow(&self.radicand, o.degree);
        let b: BigRational = Pow::pow(&o.radicand, self.degree);
        a.cmp(&b)
    }
}

impl std::fmt::Display for Root {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.degree == 1 {
            write!(f, "{}", self.radicand)
        } else {
            write!(f, "({})^(1/{})", self.radicand, self.degree)
        }
    }
}

/// The homogeneous gauge `⟦x⟧ = max_n (λ_n‖π_n x‖)^{1/n}` with `ℓ²` layer
/// norms and positive rational scales `λ_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Gauge {
    scales: Vec<Rational>,
}

impl Gauge {
    pub fn unit(alg: &GradedLieAlgebra) -> Self {
        Gauge { scales: vec![Rational::one(); alg.class()] }
    }

    pub fn with_scales(alg: &GradedLieAlgebra, scales: Vec<Rational>) -> Result<Self, LieError> {
        if scales.len() != alg.class() {
            return Err(LieError::DimensionMismatch { expected: alg.class(), got: scales.len() });
        }
        if scales.iter().any(|s| !s.is_positive()) {
            return Err(LieError::Invalid("gauge scales must be positive".into()));
        }
        Ok(Gauge { scales })
    }

    pub fn scales(&self) -> &[Rational] {
        &self.scales
    }

    pub fn scales_f64(&self) -> Vec<f64> {
        self.scales.iter().map(|s| s.to_f64().unwrap_or(f64::NAN)).collect()
    }

    /// `‖π_n x‖_n²`, exactly.
    pub fn layer_norm_sq(&self, alg: &GradedLieAlgebra, x: &LieVector, n: usize) -> Rational {
        let s: Rational = alg.layer_coords(x, n).iter().map(|c| c * c).sum();
        s * &self.scales[n - 1] * &self.scales[n - 1]
    }

    /// `⟦x⟧` as an exact root.
    pub fn value(&self, alg: &GradedLieAlgebra, x: &LieVector) -> Root {
        (1..=alg.class())
            .map(|n| Root::new(self.layer_norm_sq(alg, x, n), 2 * n as u32))
            .max()
            .unwrap_or_else(Root::zero)
    }

    pub fn value_f64(&self, alg: &GradedLieAlgebra, x: &LieVector) -> f64 {
        self.from_layers(&raw_layer_norms(alg, x))
    }

    /// `⟦x⟧` from unscaled `ℓ²` layer norms.
    pub fn from_layers(&self, norms: &[f64]) -> f64 {
        from_layers_with(&self.scales_f64(), norms)
    }

    /// Certified `M ≥ 1` with `‖(x,y)‖ ≤ M‖x‖‖y‖` for the max-of-layers norm
    /// `‖x‖ = max_n λ_n‖π_n x‖`: for each target layer, the sum over
    /// `a + b = n` of the Frobenius norms of the rescaled bracket blocks.
    pub fn bracket_bound(&self, alg: &GradedLieAlgebra) -> f64 {
        let c = alg.class();
        let mut blocks = vec![vec![Rational::zero(); c + 1]; c + 1];
        for (i, j, k, q) in alg.constants() {
            let (a, b, n) = (alg.layer_of(i), alg.layer_of(j), alg.layer_of(k));
            let f = &q * &self.scales[n - 1] / (&self.scales[a - 1] * &self.scales[b - 1]);
            blocks[a][b] += &f * &f;
        }
        let mut m: f64 = 1.0;
        for n in 2..=c {
            let s: f64 = (1..n).map(|a| blocks[a][n - a].to_f64().unwrap_or(f64::INFINITY).sqrt()).sum();
            // One ulp of headroom per term keeps the float bound an upper bound.
            m = m.max(s * (1.0 + 4.0 * f64::EPSILON));
        }
        m
    }
}

/// Unscaled `‖π_n x‖` for each layer.
pub fn raw_layer_norms(alg: &GradedLieAlgebra, x: &LieVector) -> Vec<f64> {
    (1..=alg.class())
        .map(|n| {
            let s: Rational = alg.layer_coords(x, n).iter().map(|c| c * c).sum();
            s.to_f64().unwrap_or(f64::INFINITY).sqrt()
        })
        .collect()
}

pub fn from_layers_with(scales: &[f64], norms: &[f64]) -> f64 {
    norms
        .iter()
        .zip(scales)
        .enumerate()
        .map(|(i, (v, l))| {
            let n = i + 1;
            let t = l * v;
            if n == 1 { t } else { t.powf(1.0 / n as f64) }
        })
        .fold(0.0, f64::max)
}

/// Slack for comparisons of float gauge values.
pub fn tolerance(scale: f64) -> f64 {
    1e-12 * (1.0 + scale.abs())
}

/// Seed of the fixed tuning sample used by [`rescale_norms`].
pub const RESCALE_SEED: u64 = 0x6761_7567;
pub const RESCALE_SAMPLES: usize = 10_000;
/// `λ_n = ε^{n−1}` with `ε = 2^{−k}` for `k = 0, …, RESCALE_STEPS`.
pub const RESCALE_STEPS: u32 = 24;

/// Layer norms of `x`, `y` and `xy` for one sample pair.
#[derive(Debug, Clone)]
pub struct PairNorms {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub xy: Vec<f64>,
}

/// Seeded pairs at many scales together with all basis pairs `±e_i, ±e_j`.
pub fn triangle_sample(alg: &GradedLieAlgebra, count: usize, seed: u64) -> Result<Vec<PairNorms>, LieError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    let d = alg.dim();
    for i in 0..d {
        for j in 0..d {
            for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                pairs.push((alg.e(i).scale_int(si), alg.e(j).scale_int(sj)));
            }
        }
    }
    for _ in 0..count {
        let x = random_scaled(alg, &mut rng);
        let y = if rng.random_bool(0.1) { x.scale_int(rng.random_range(-3..=3)) } else { random_scaled(alg, &mut rng) };
        pairs.push((x, y));
    }
    pairs
        .into_iter()
        .map(|(x, y)| {
            let xy = bch_product(alg, &x, &y)?;
            Ok(PairNorms { x: raw_layer_norms(alg, &x), y: raw_layer_norms(alg, &y), xy: raw_layer_norms(alg, &xy) })
        })
        .collect()
}

/// `max(⟦xy⟧ − ⟦x⟧ − ⟦y⟧)` over the sample and the pair attaining it.
pub fn worst_excess(scales: &[f64], sample: &[PairNorms]) -> (f64, usize) {
    let mut worst = (f64::NEG_INFINITY, 0);
    for (i, p) in sample.iter().enumerate() {
        let gx = from_layers_with(scales, &p.x);
        let gy = from_layers_with(scales, &p.y);
        let e = from_layers_with(scales, &p.xy) - gx - gy - tolerance(gx + gy);
        if e > worst.0 {
            worst = (e, i);
        }
    }
    worst
}

/// A gauge accepted by [`rescale_norms`].
#[derive(Debug, Clone)]
pub struct Rescaled {
    pub gauge: Gauge,
    /// The `k` of `ε = 2^{−k}`.
    pub step: u32,
    /// `min(⟦x⟧ + ⟦y⟧ + α − ⟦xy⟧)` over the tuning sample; nonnegative.
    pub min_slack: f64,
    /// Grid points rejected before this one, with their largest excess
    /// `⟦xy⟧ − ⟦x⟧ − ⟦y⟧`.
    pub rejected: Vec<(u32, f64)>,
}

/// Finds scales with `⟦xy⟧ ≤ ⟦x⟧ + ⟦y⟧ + α` on a fixed sample.
///
/// Searches `λ_n = base_n·ε^{n−1}` for `ε = 1, ½, ¼, …` and returns the
/// first grid point passing all sampled pairs. Shrinking the upper layers
/// shrinks the cross terms of the product, so the search terminates for
/// any base in practice. Validation is by sampling only; the result is
/// not a certificate.
pub fn rescale_norms(alg: &GradedLieAlgebra, alpha: f64) -> Result<Rescaled, LieError> {
    rescale_norms_from(alg, &Gauge::unit(alg), alpha)
}

pub fn rescale_norms_from(alg: &GradedLieAlgebra, base: &Gauge, alpha: f64) -> Result<Rescaled, LieError> {
    let sample = triangle_sample(alg, RESCALE_SAMPLES, RESCALE_SEED)?;
    let mut rejected = Vec::new();
    for k in 0..=RESCALE_STEPS {
        let eps = BigRational::new(BigInt::one(), BigInt::one() << k);
        let mut scales = Vec::new();
        let mut f = Rational::one();
        for n in 0..alg.class() {
            scales.push(&base.scales[n] * &f);
            f *= &eps;
        }
        let gauge = Gauge { scales };
        let (excess, _) = worst_excess(&gauge.scales_f64(), &sample);
        if excess <= alpha {
            return Ok(Rescaled { gauge, step: k, min_slack: alpha - excess, rejected });
        }
        rejected.push((k, excess));
    }
    let largest_violation = rejected.last().map_or(f64::NAN, |r| r.1 - alpha);
    Err(LieError::SearchExhausted { largest_violation })
}

/// First sampled pair violating `⟦xy⟧ ≤ ⟦x⟧ + ⟦y⟧ + α` under `gauge`, as
/// `(x, y, excess over α)`.
pub fn triangle_violation(
    alg: &GradedLieAlgebra,
    gauge: &Gauge,
    alpha: f64,
    count: usize,
    seed: u64,
) -> Result<Option<(LieVector, LieVector, f64)>, LieError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut basis = Vec::new();
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            basis.push((alg.e(i), alg.e(j)));
        }
    }
    let scales = gauge.scales_f64();
    let check = |x: LieVector, y: LieVector| -> Result<Option<(LieVector, LieVector, f64)>, LieError> {
        let xy = bch_product(alg, &x, &y)?;
        let gx = from_layers_with(&scales, &raw_layer_norms(alg, &x));
        let gy = from_layers_with(&scales, &raw_layer_norms(alg, &y));
        let gxy = from_layers_with(&scales, &raw_layer_norms(alg, &xy));
        let e = gxy - gx - gy - alpha;
        Ok((e > tolerance(gx + gy)).then_some((x, y, e)))
    };
    for (x, y) in basis {
        if let Some(v) = check(x, y)? {
            return Ok(Some(v));
        }
    }
    for _ in 0..count {
        let x = random_scaled(alg, &mut rng);
        let y = random_scaled(alg, &mut rng);
        if let Some(v) = check(x, y)? {
            return Ok(Some(v));
        }
    }
    Ok(None)
}
