use metric_core::{norm_within, PointedSpace, SpaceError, UnboundedSet};
use rayon::prelude::*;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::{ConeError, DistanceEstimate, TailWindow};

/// The points of a reference set `R` up to some radius, with their norms,
/// indexed by norm for pruned nearest-ratio searches.
#[derive(Debug, Clone)]
pub struct Candidates<P> {
    pub points: Vec<P>,
    pub norms: Vec<f64>,
    /// Enumeration indices of points with positive norm, sorted by norm.
    by_norm: Vec<usize>,
    sorted_norms: Vec<f64>,
    pub radius: f64,
}

impl<P: Clone> Candidates<P> {
    pub fn build<S, R>(space: &S, set: &R, radius: f64) -> Result<Self, ConeError>
    where
        S: PointedSpace<Point = P> + ?Sized,
        R: UnboundedSet<S> + ?Sized,
    {
        let points = set.slice(space, radius)?;
        let norms = points.iter().map(|p| space.norm(p)).collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_parts(points, norms, radius))
    }

    pub fn from_parts(points: Vec<P>, norms: Vec<f64>, radius: f64) -> Self {
        let mut by_norm: Vec<usize> = (0..points.len()).filter(|&i| norms[i] > 0.0).collect();
        by_norm.sort_by(|&i, &j| norms[i].total_cmp(&norms[j]).then(i.cmp(&j)));
        let sorted_norms = by_norm.iter().map(|&i| norms[i]).collect();
        Candidates { points, norms, by_norm, sorted_norms, radius }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// The minimizing ratio `d(y,x)/‖x‖` and the enumeration index of `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InnerRatio {
    pub value: f64,
    pub witness: usize,
}

fn slack(best: f64) -> f64 {
    best.abs() * 1e-9 + 1e-12
}

/// Minimum of `d(y,x)/‖x‖` over candidates with `0 < ‖x‖ ≤ cap·‖y‖`.
///
/// The triangle inequality gives `d(y,x)/‖x‖ ≥ |‖y‖−‖x‖|/‖x‖`, which grows
/// as `‖x‖` moves away from `‖y‖` in either direction. Candidates are
/// visited outward from `‖y‖` and each direction stops once that bound
/// exceeds the best ratio, so the result equals the brute-force minimum
/// (smallest enumeration index among ties).
pub fn ratio_against<S>(
    space: &S,
    y: &S::Point,
    ny: f64,
    cands: &Candidates<S::Point>,
    cap: f64,
) -> Result<InnerRatio, ConeError>
where
    S: PointedSpace + ?Sized,
{
    ratio_until(space, y, ny, cands, cap, f64::NEG_INFINITY)
}

/// As [`ratio_against`], but gives up as soon as some ratio at or below
/// `floor` is found; the returned value is then only an upper bound on the
/// minimum, which is all a max-of-mins needs.
fn ratio_until<S>(
    space: &S,
    y: &S::Point,
    ny: f64,
    cands: &Candidates<S::Point>,
    cap: f64,
    floor: f64,
) -> Result<InnerRatio, ConeError>
where
    S: PointedSpace + ?Sized,
{
    let limit = cap * ny;
    let sorted = &cands.sorted_norms;
    let end = sorted.partition_point(|&n| n <= limit);
    let start = sorted.partition_point(|&n| n < ny).min(end);
    let (mut up, mut down) = (start, start);
    let mut best = f64::INFINITY;
    let mut best_idx = usize::MAX;
    let mut deferred: Vec<f64> = Vec::new();

    loop {
        let up_open = up < end;
        let down_open = down > 0;
        if !up_open && !down_open {
            break;
        }
        let take_up = match (up_open, down_open) {
            (true, true) => sorted[up] - ny <= ny - sorted[down - 1],
            (u, _) => u,
        };
        let k = if take_up { up } else { down - 1 };
        let nx = sorted[k];
        let lb = (ny - nx).abs() / nx;
        if lb > best + slack(best) {
            if take_up {
                up = end;
            } else {
                down = 0;
            }
            continue;
        }
        if take_up {
            up += 1;
        } else {
            down -= 1;
        }
        let idx = cands.by_norm[k];
        match space.distance(y, &cands.points[idx]) {
            Ok(d) => {
                let ratio = d / nx;
                if ratio < best || (ratio == best && idx < best_idx) {
                    best = ratio;
                    best_idx = idx;
                }
                if best <= floor {
                    return Ok(InnerRatio { value: best, witness: best_idx });
                }
            }
            Err(SpaceError::BeyondHorizon { lower_bound }) => deferred.push(lower_bound / nx),
            Err(e) => return Err(e.into()),
        }
    }
    if best_idx == usize::MAX {
        return Err(match deferred.first() {
            Some(&lb) => SpaceError::BeyondHorizon { lower_bound: lb }.into(),
            None => ConeError::EmptySlice,
        });
    }
    if let Some(&lb) = deferred.iter().find(|&&lb| lb <= best + slack(best)) {
        return Err(SpaceError::HorizonExceeded { requested: lb, limit: best }.into());
    }
    Ok(InnerRatio { value: best, witness: best_idx })
}

/// `min { d(y,x)/‖x‖ : x ∈ R, 0 < ‖x‖ ≤ K‖y‖ }`. The witness indexes
/// `R.slice(K‖y‖)`.
pub fn inner_ratio<S, R>(space: &S, y: &S::Point, set: &R, cap: f64) -> Result<InnerRatio, ConeError>
where
    S: PointedSpace + ?Sized,
    R: UnboundedSet<S> + ?Sized,
{
    let ny = space.norm(y)?;
    if !(ny > 0.0) {
        return Err(ConeError::InvalidParams("inner ratio needs a point of positive norm".into()));
    }
    let cands = Candidates::build(space, set, cap * ny)?;
    ratio_against(space, y, ny, &cands, cap)
}

/// Tail estimate of `s⁺(R,S)`: the largest inner ratio over points of `S`
/// with norm in `[r_min, r_max]`.
pub fn s_plus_estimate<S, R, T>(space: &S, r: &R, s: &T, w: &TailWindow) -> Result<DistanceEstimate, ConeError>
where
    S: PointedSpace + ?Sized,
    R: UnboundedSet<S> + ?Sized,
    T: UnboundedSet<S> + ?Sized,
{
    let cands = Candidates::build(space, r, w.cap * w.r_max)?;
    s_plus_against(space, &cands, s, w)
}

/// As [`s_plus_estimate`], reusing candidates built to at least `K·r_max`.
pub fn s_plus_against<S, T>(
    space: &S,
    cands: &Candidates<S::Point>,
    s: &T,
    w: &TailWindow,
) -> Result<DistanceEstimate, ConeError>
where
    S: PointedSpace + ?Sized,
    T: UnboundedSet<S> + ?Sized,
{
    if cands.radius < w.cap * w.r_max {
        return Err(ConeError::InvalidParams(format!(
            "candidates reach {} but the window needs {}",
            cands.radius,
            w.cap * w.r_max
        )));
    }
    let mut tail: Vec<(S::Point, f64)> = Vec::new();
    for y in s.slice(space, w.r_max)? {
        if let Some(n) = norm_within(space, &y, w.r_max)? {
            if n >= w.r_min {
                tail.push((y, n));
            }
        }
    }
    if tail.is_empty() {
        return Err(ConeError::EmptyWindow { r_min: w.r_min, r_max: w.r_max });
    }
    tail_max(space, cands, &tail, w)
}

/// As [`s_plus_against`] with the tail of `S` taken from candidates built
/// for `S` itself, so scans over many pairs enumerate each set once.
pub fn s_plus_between<P: Clone + Send + Sync, S>(
    space: &S,
    r: &Candidates<P>,
    s: &Candidates<P>,
    w: &TailWindow,
) -> Result<DistanceEstimate, ConeError>
where
    S: PointedSpace<Point = P> + ?Sized,
{
    for c in [r, s] {
        if c.radius < w.cap * w.r_max {
            return Err(ConeError::InvalidParams(format!(
                "candidates reach {} but the window needs {}",
                c.radius,
                w.cap * w.r_max
            )));
        }
    }
    let tail: Vec<(P, f64)> = s
        .points
        .iter()
        .zip(&s.norms)
        .filter(|(_, &n)| n >= w.r_min && n <= w.r_max)
        .map(|(p, &n)| (p.clone(), n))
        .collect();
    if tail.is_empty() {
        return Err(ConeError::EmptyWindow { r_min: w.r_min, r_max: w.r_max });
    }
    tail_max(space, r, &tail, w)
}

/// `max(ŝ⁺(R,S), ŝ⁺(S,R))` from prebuilt candidates.
pub fn s_between<P: Clone + Send + Sync, S>(
    space: &S,
    r: &Candidates<P>,
    s: &Candidates<P>,
    w: &TailWindow,
) -> Result<DistanceEstimate, ConeError>
where
    S: PointedSpace<Point = P> + ?Sized,
{
    let a = s_plus_between(space, r, s, w)?;
    let b = s_plus_between(space, s, r, w)?;
    Ok(if b.value > a.value { b } else { a })
}

fn tail_max<S>(
    space: &S,
    cands: &Candidates<S::Point>,
    tail: &[(S::Point, f64)],
    w: &TailWindow,
) -> Result<DistanceEstimate, ConeError>
where
    S: PointedSpace + ?Sized,
{
    // Shared running maximum. A tail point whose search already found a
    // ratio at or below it cannot raise the maximum and is abandoned, so the
    // final value does not depend on scheduling. Once the maximum reaches 1
    // the clamped result is fixed and the remaining points are skipped.
    let running = AtomicU64::new(0f64.to_bits());
    let ratios: Vec<Result<f64, ConeError>> = tail
        .par_iter()
        .map(|(y, ny)| {
            let floor = f64::from_bits(running.load(Ordering::Relaxed));
            if floor >= 1.0 {
                return Ok(floor);
            }
            let v = ratio_until(space, y, *ny, cands, w.cap, floor)?.value;
            running.fetch_max(v.to_bits(), Ordering::Relaxed);
            Ok(v)
        })
        .collect();
    let mut worst = 0.0f64;
    for r in ratios {
        worst = worst.max(r?);
    }
    Ok(DistanceEstimate::estimated(worst, *w))
}

/// `ŝ(R,S) = max(ŝ⁺(R,S), ŝ⁺(S,R))`.
pub fn s_estimate<S, R, T>(space: &S, r: &R, s: &T, w: &TailWindow) -> Result<DistanceEstimate, ConeError>
where
    S: PointedSpace + ?Sized,
    R: UnboundedSet<S> + ?Sized,
    T: UnboundedSet<S> + ?Sized,
{
    let a = s_plus_estimate(space, r, s, w)?;
    let b = s_plus_estimate(space, s, r, w)?;
    Ok(if b.value > a.value { b } else { a })
}

/// `t̂ = √ŝ`; the saturation flag is inherited from `ŝ`.
pub fn t_estimate<S, R, T>(space: &S, r: &R, s: &T, w: &TailWindow) -> Result<DistanceEstimate, ConeError>
where
    S: PointedSpace + ?Sized,
    R: UnboundedSet<S> + ?Sized,
    T: UnboundedSet<S> + ?Sized,
{
    let mut e = s_estimate(space, r, s, w)?;
    e.value = e.value.sqrt();
    Ok(e)
}
