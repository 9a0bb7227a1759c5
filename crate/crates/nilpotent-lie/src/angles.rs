use cone_metric::{DistanceEstimate, TailWindow};
use num_traits::{One, Zero};

use crate::algebra::{int, GradedLieAlgebra, LieVector, Rational};
use crate::bch::{eval_in, ScaledProduct};
use crate::gauge::{raw_layer_norms, Gauge, Root};
use crate::LieError;

/// Which cyclic set a direction spans.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Span {
    /// `⟨x⟩⁺ = {nx : n ≥ 0}`.
    Positive,
    /// `⟨x⟩ = {nx : n ∈ ℤ}`.
    Full,
}

/// `s⁺` between `⟨x⟩⁺` and `⟨y⟩⁺` (or the full subgroups) for the
/// additive metric `⟦−x+y⟧`, in the three cases where it is known exactly:
///
/// * same leading layer `i` and `x − y ∈ 𝔤_{i+1}`: 0;
/// * `y` strictly deeper than `x`: 1;
/// * `x, y ∈ V_i`: `sin(min(π/2, ∠))^{1/i}`, or `sin(∠)^{1/i}` between
///   lines for full subgroups.
pub fn s_plus_additive_exact(alg: &GradedLieAlgebra, x: &LieVector, y: &LieVector, span: Span) -> Result<Root, LieError> {
    alg.check(x)?;
    alg.check(y)?;
    let (Some(i), Some(j)) = (alg.depth(x), alg.depth(y)) else {
        return Err(LieError::Invalid("directions must be nonzero".into()));
    };
    if i == j && alg.layer_coords(x, i) == alg.layer_coords(y, i) {
        return Ok(Root::zero());
    }
    if j > i {
        return Ok(Root::rational(Rational::one()));
    }
    if i == j && alg.in_layer(x, i) && alg.in_layer(y, i) {
        let (a, b) = (alg.layer_coords(x, i), alg.layer_coords(y, i));
        let dot: Rational = a.iter().zip(b).map(|(p, q)| p * q).sum();
        let na: Rational = a.iter().map(|p| p * p).sum();
        let nb: Rational = b.iter().map(|p| p * p).sum();
        if span == Span::Positive && dot <= Rational::zero() {
            return Ok(Root::rational(Rational::one()));
        }
        let sin_sq = (&na * &nb - &dot * &dot) / (na * nb);
        return Ok(Root::new(sin_sq, 2 * i as u32));
    }
    Err(LieError::CaseNotCovered(format!(
        "leading layers {i} and {j} with different leading parts, not both in one layer"
    )))
}

/// Tail estimate of `s⁺_m(⟨x⟩⁺, ⟨y⟩⁺)`:
/// `max_{n ∈ [N/2, N]} min_{1 ≤ m ≤ K·N} ⟦y⁻ⁿxᵐ⟧ / ⟦xᵐ⟧`.
///
/// Products are exact; only the gauge roots are evaluated in floating
/// point. Values at or above `1 − 1/K` are flagged saturated.
pub fn s_plus_mult_estimate(
    alg: &GradedLieAlgebra,
    gauge: &Gauge,
    x: &LieVector,
    y: &LieVector,
    horizon: u64,
    cap: f64,
) -> Result<DistanceEstimate, LieError> {
    if horizon < 2 {
        return Err(LieError::Invalid(format!("horizon {horizon} is below 2")));
    }
    if x.is_zero() || y.is_zero() {
        return Err(LieError::Invalid("directions must be nonzero".into()));
    }
    let n_lo = horizon.div_ceil(2);
    let window = TailWindow::new(n_lo as f64, horizon as f64, cap)?;
    let m_max = (cap * horizon as f64).floor() as u64;
    let product = ScaledProduct::for_powers(alg, y, x)?;
    let scales = gauge.scales_f64();
    let gx = gauge.value_f64(alg, x);
    // Gauge of xᵐ = m·x from the layer norms of x.
    let x_norms = raw_layer_norms(alg, x);
    let gauge_xm = |m: f64| -> f64 {
        x_norms
            .iter()
            .zip(&scales)
            .enumerate()
            .map(|(i, (v, l))| (l * m * v).powf(1.0 / (i + 1) as f64))
            .fold(0.0, f64::max)
    };
    debug_assert!((gauge_xm(1.0) - gx).abs() <= 1e-9 * (1.0 + gx));

    // Running max of the per-n minima; an n whose search already dropped
    // to it cannot change the result and is abandoned.
    let mut worst = 0.0f64;
    for n in n_lo..=horizon {
        let poly = product.fix_first(&int(n as i64));
        let mut best = f64::INFINITY;
        for m in 1..=m_max {
            let v = eval_in(&poly, &int(m as i64));
            let g = crate::gauge::from_layers_with(&scales, &raw_layer_norms(alg, &v));
            let r = g / gauge_xm(m as f64);
            if r < best {
                best = r;
                if best <= worst {
                    break;
                }
            }
        }
        worst = worst.max(best);
    }
    Ok(DistanceEstimate::estimated(worst, window))
}

/// `⟦y⁻ⁿxᵐ⟧` exactly.
pub fn shifted_power_gauge(alg: &GradedLieAlgebra, gauge: &Gauge, x: &LieVector, y: &LieVector, n: i64, m: i64) -> Result<Root, LieError> {
    let p = ScaledProduct::for_powers(alg, y, x)?;
    Ok(gauge.value(alg, &p.at(&int(n), &int(m))))
}
