use std::collections::HashSet;

use metric_core::{norm_within, PointedSpace, SpaceError, UnboundedSet};

/// A map with its quasi-isometry constant `q ≥ 1`.
#[derive(Clone)]
pub struct QuasiIsometry<F> {
    pub map: F,
    pub q: f64,
}

impl<F> QuasiIsometry<F> {
    pub fn new(map: F, q: f64) -> Self {
        assert!(q >= 1.0, "quasi-isometry constant must be at least 1");
        QuasiIsometry { map, q }
    }
}

/// The image `f(R)` as an unbounded set of the target space.
///
/// A target slice at radius `r` only needs source points of norm at most
/// `q(r + δ + q)`, where `δ = d(o_Y, f(o_X))`, by the lower quasi-isometry
/// bound.
pub struct Pushforward<'a, SX: PointedSpace + ?Sized, R, F> {
    pub source: &'a SX,
    pub set: R,
    pub f: QuasiIsometry<F>,
    pub offset: f64,
}

pub fn pushforward<'a, SX, SY, R, F>(
    source: &'a SX,
    target: &SY,
    f: QuasiIsometry<F>,
    set: R,
) -> Result<Pushforward<'a, SX, R, F>, SpaceError>
where
    SX: PointedSpace + ?Sized,
    SY: PointedSpace + ?Sized,
    F: Fn(&SX::Point) -> SY::Point,
{
    let offset = target.norm(&(f.map)(&source.reference()))?;
    Ok(Pushforward { source, set, f, offset })
}

impl<'a, SX, SY, R, F> UnboundedSet<SY> for Pushforward<'a, SX, R, F>
where
    SX: PointedSpace + ?Sized,
    SY: PointedSpace + ?Sized,
    R: UnboundedSet<SX>,
    F: Fn(&SX::Point) -> SY::Point + Sync,
{
    fn slice(&self, target: &SY, r: f64) -> Result<Vec<SY::Point>, SpaceError> {
        let q = self.f.q;
        let pre = self.set.slice(self.source, q * (r + self.offset + q))?;
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for x in pre {
            let y = (self.f.map)(&x);
            if norm_within(target, &y, r)?.is_some() && seen.insert(y.clone()) {
                out.push(y);
            }
        }
        Ok(out)
    }

    fn label(&self) -> String {
        format!("f({})", self.set.label())
    }
}

/// First sampled pair violating
/// `q⁻¹d(x,x′) − q ≤ d(f(x),f(x′)) ≤ q·d(x,x′) + q`, if any.
pub fn check_quasi_isometry<SX, SY, F>(
    source: &SX,
    target: &SY,
    f: &QuasiIsometry<F>,
    pairs: &[(SX::Point, SX::Point)],
) -> Result<Option<(SX::Point, SX::Point)>, SpaceError>
where
    SX: PointedSpace + ?Sized,
    SY: PointedSpace + ?Sized,
    F: Fn(&SX::Point) -> SY::Point,
{
    let q = f.q;
    for (x, y) in pairs {
        let d = source.distance(x, y)?;
        let e = target.distance(&(f.map)(x), &(f.map)(y))?;
        if e < d / q - q - 1e-12 || e > q * d + q + 1e-12 {
            return Ok(Some((x.clone(), y.clone())));
        }
    }
    Ok(None)
}
