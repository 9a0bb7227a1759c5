use metric_core::{GroupSpace, PointedSpace, SpaceError, UnboundedSet};
use rayon::prelude::*;

use crate::estimate::{s_plus_estimate, Candidates};
use crate::{ConeError, ConeParams, TailWindow};

/// Is `d(y,x) ≤ radius` decidable and true, decidable and false, or unknown?
fn within<S: PointedSpace + ?Sized>(space: &S, y: &S::Point, x: &S::Point, radius: f64) -> Result<bool, SpaceError> {
    match space.distance(y, x) {
        Ok(d) => Ok(d <= radius),
        Err(SpaceError::BeyondHorizon { lower_bound }) if lower_bound > radius => Ok(false),
        Err(e) => Err(e),
    }
}

/// Does `S ∩ B(o, horizon)` lie in `αR+a`, using the points of `R` with
/// norm at most `cap·horizon` as ball centres?
pub fn cone_contains<S, T, R>(
    space: &S,
    s: &T,
    r: &R,
    p: ConeParams,
    horizon: f64,
    cap: f64,
) -> Result<bool, ConeError>
where
    S: PointedSpace + ?Sized,
    T: UnboundedSet<S> + ?Sized,
    R: UnboundedSet<S> + ?Sized,
{
    let ys = s.slice(space, horizon)?;
    let cands = Candidates::build(space, r, cap * horizon)?;
    let hits: Vec<Result<bool, SpaceError>> = ys
        .par_iter()
        .map(|y| {
            let ny = space.norm(y)?;
            for (x, &nx) in cands.points.iter().zip(&cands.norms) {
                let radius = p.radius(nx);
                // |‖y‖ − ‖x‖| ≤ d(y,x) rules most centres out cheaply.
                if (ny - nx).abs() > radius {
                    continue;
                }
                if within(space, y, x, radius)? {
                    return Ok(true);
                }
            }
            Ok(false)
        })
        .collect();
    for h in hits {
        if !h? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Membership of a point in `int(αR ∖ U(o,r))`: its norm is at least `r`
/// and some centre `x ∈ R` has `d(p,x) + margin ≤ α‖x‖`. In discrete
/// spaces every set is open, so `margin = 0` is the interior test there.
pub fn neighborhood_contains_point<S, R>(
    space: &S,
    xi: &R,
    alpha: f64,
    r: f64,
    probe: &S::Point,
    margin: f64,
    cap: f64,
) -> Result<bool, ConeError>
where
    S: PointedSpace + ?Sized,
    R: UnboundedSet<S> + ?Sized,
{
    if !(alpha > 0.0) {
        return Err(ConeError::InvalidParams(format!("alpha = {alpha}")));
    }
    let np = space.norm(probe)?;
    if np < r {
        return Ok(false);
    }
    let cands = Candidates::build(space, xi, cap * np.max(1.0))?;
    for (x, &nx) in cands.points.iter().zip(&cands.norms) {
        let radius = alpha * nx - margin;
        if radius < 0.0 || (np - nx).abs() > radius {
            continue;
        }
        if within(space, probe, x, radius)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Membership of a boundary point `ζ` in the neighborhood of `ξ`:
/// `ŝ⁺(ξ,ζ) < α`. Estimates within `slack` of `α`, or saturated estimates
/// below a threshold they cannot certify, are undecidable.
pub fn neighborhood_contains_set<S, R, Z>(
    space: &S,
    xi: &R,
    alpha: f64,
    zeta: &Z,
    w: &TailWindow,
    slack: f64,
) -> Result<bool, ConeError>
where
    S: PointedSpace + ?Sized,
    R: UnboundedSet<S> + ?Sized,
    Z: UnboundedSet<S> + ?Sized,
{
    if !(alpha > 0.0) {
        return Err(ConeError::InvalidParams(format!("alpha = {alpha}")));
    }
    let e = s_plus_estimate(space, xi, zeta, w)?;
    if e.saturated {
        if alpha <= w.saturation_threshold() {
            return Ok(false);
        }
        return Err(ConeError::Undecidable { estimate: e.value, alpha, slack });
    }
    if (e.value - alpha).abs() <= slack {
        return Err(ConeError::Undecidable { estimate: e.value, alpha, slack });
    }
    Ok(e.value < alpha)
}

/// Outcome of checking `‖gᵐ‖ ≤ C‖gⁿ‖ + C` for `0 ≤ m ≤ n ≤ horizon`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthReport {
    pub holds: bool,
    /// The least `C` for which the inequality holds on the checked range.
    pub least_constant: f64,
    /// A violating pair `(m, n)` for the given `C`, if any.
    pub violation: Option<(u64, u64)>,
}

/// Check the bounded-growth condition `d(1,gᵐ) ≤ C·d(1,gⁿ) + C` on the
/// first `horizon` powers of `g`.
pub fn constant_growth_check<S>(space: &S, g: &S::Point, c: f64, horizon: u64) -> Result<GrowthReport, ConeError>
where
    S: GroupSpace + ?Sized,
{
    let e = space.identity();
    let mut cur = e.clone();
    let mut norms = Vec::with_capacity(horizon as usize + 1);
    for _ in 0..=horizon {
        // Measured from the identity, not from a possibly shifted reference.
        norms.push(space.distance(&e, &cur)?);
        cur = space.multiply(&cur, g);
    }
    let mut least: f64 = 0.0;
    let mut violation = None;
    let mut prefix_max = 0.0f64;
    let mut argmax = 0u64;
    for (n, &nn) in norms.iter().enumerate() {
        if nn > prefix_max {
            prefix_max = nn;
            argmax = n as u64;
        }
        least = least.max(prefix_max / (nn + 1.0));
        if violation.is_none() && prefix_max > c * nn + c {
            violation = Some((argmax, n as u64));
        }
    }
    Ok(GrowthReport { holds: violation.is_none(), least_constant: least, violation })
}
