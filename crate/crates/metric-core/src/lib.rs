//! Pointed metric spaces and the enumeration contract for unbounded subsets.
//!
//! A [`PointedSpace`] carries a distance and a reference point `o`. An
//! [`UnboundedSet`] is anything that can list its points inside the closed
//! ball `B(o, r)` for every radius `r`. Every estimator downstream only ever
//! touches sets through these finite slices.

use std::collections::HashSet;
use std::fmt::Debug;
use std::hash::Hash;

mod orbit;
mod sample;

pub use orbit::{CyclicOrbit, OrbitSense, DEFAULT_OVERSHOOT, MAX_ORBIT_INDEX};
pub use sample::{check_metric_axioms, AxiomViolation};

/// Errors raised by spaces and sets.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpaceError {
    /// The distance could not be computed, but it is known to be at least
    /// `lower_bound`. Callers that only need to rule a point out may use the
    /// bound instead of failing.
    #[error("distance lies beyond the computable horizon (at least {lower_bound})")]
    BeyondHorizon { lower_bound: f64 },

    /// A slice was requested past what the backing generator can enumerate.
    #[error("cannot enumerate to radius {requested}; limit is {limit}")]
    HorizonExceeded { requested: f64, limit: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("negative radius {0}")]
    NegativeRadius(f64),

    #[error("{0}")]
    Invalid(String),
}

/// A metric space with a distinguished reference point.
pub trait PointedSpace: Sync {
    type Point: Clone + Eq + Hash + Debug + Send + Sync;

    fn distance(&self, x: &Self::Point, y: &Self::Point) -> Result<f64, SpaceError>;

    /// The point `o`.
    fn reference(&self) -> Self::Point;

    fn label(&self) -> String;

    /// `d(o, x)`.
    fn norm(&self, x: &Self::Point) -> Result<f64, SpaceError> {
        self.distance(&self.reference(), x)
    }
}

/// A space whose points form a group acting on it by left translation.
pub trait GroupSpace: PointedSpace {
    fn identity(&self) -> Self::Point;
    fn multiply(&self, g: &Self::Point, h: &Self::Point) -> Self::Point;
    fn inverse(&self, g: &Self::Point) -> Self::Point;

    /// `gⁿ` for any integer `n`, by binary decomposition.
    fn power(&self, g: &Self::Point, n: i64) -> Self::Point {
        let base = if n < 0 { self.inverse(g) } else { g.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = self.identity();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.multiply(&acc, &sq);
            }
            e >>= 1;
            if e > 0 {
                sq = self.multiply(&sq, &sq);
            }
        }
        acc
    }
}

/// An unbounded subset of a pointed space, enumerable by radius.
///
/// `slice(space, r)` returns exactly the points of the set with norm at most
/// `r`, without duplicates, in a deterministic enumeration order. Slices are
/// monotone in `r`.
pub trait UnboundedSet<S: PointedSpace + ?Sized>: Sync {
    fn slice(&self, space: &S, r: f64) -> Result<Vec<S::Point>, SpaceError>;
    fn label(&self) -> String;
}

impl<S: PointedSpace + ?Sized, T: UnboundedSet<S> + ?Sized> UnboundedSet<S> for &T {
    fn slice(&self, space: &S, r: f64) -> Result<Vec<S::Point>, SpaceError> {
        (**self).slice(space, r)
    }
    fn label(&self) -> String {
        (**self).label()
    }
}

impl<S: PointedSpace + ?Sized, T: UnboundedSet<S> + ?Sized> UnboundedSet<S> for Box<T> {
    fn slice(&self, space: &S, r: f64) -> Result<Vec<S::Point>, SpaceError> {
        (**self).slice(space, r)
    }
    fn label(&self) -> String {
        (**self).label()
    }
}

/// The points of `set` inside the closed ball of radius `r` about `o`.
pub fn ball_points<S, U>(space: &S, set: &U, r: f64) -> Result<Vec<S::Point>, SpaceError>
where
    S: PointedSpace + ?Sized,
    U: UnboundedSet<S> + ?Sized,
{
    if !(r >= 0.0) {
        return Err(SpaceError::NegativeRadius(r));
    }
    set.slice(space, r)
}

/// Classify a point against radius `r`: `Ok(Some(n))` when its norm is known
/// and at most `r`, `Ok(None)` when it is provably outside, and an error when
/// the space cannot decide.
pub fn norm_within<S: PointedSpace + ?Sized>(
    space: &S,
    x: &S::Point,
    r: f64,
) -> Result<Option<f64>, SpaceError> {
    match space.norm(x) {
        Ok(n) if n <= r => Ok(Some(n)),
        Ok(_) => Ok(None),
        Err(SpaceError::BeyondHorizon { lower_bound }) if lower_bound > r => Ok(None),
        Err(SpaceError::BeyondHorizon { lower_bound }) => Err(SpaceError::HorizonExceeded {
            requested: r,
            limit: lower_bound,
        }),
        Err(e) => Err(e),
    }
}

/// A finite list of points standing in for an unbounded set up to a
/// declared `reach`: slices at radius `r <= reach` are taken as exact.
#[derive(Debug, Clone)]
pub struct PointList<P> {
    pub label: String,
    pub points: Vec<P>,
    pub norms: Vec<f64>,
    pub reach: f64,
}

impl<P: Clone + Eq + Hash> PointList<P> {
    pub fn new<S>(space: &S, label: impl Into<String>, points: Vec<P>, reach: f64) -> Result<Self, SpaceError>
    where
        S: PointedSpace<Point = P> + ?Sized,
    {
        let norms = points.iter().map(|p| space.norm(p)).collect::<Result<Vec<_>, _>>()?;
        Ok(Self::with_norms(label, points, norms, reach))
    }

    pub fn with_norms(label: impl Into<String>, points: Vec<P>, norms: Vec<f64>, reach: f64) -> Self {
        assert_eq!(points.len(), norms.len());
        PointList { label: label.into(), points, norms, reach }
    }
}

impl<S, P> UnboundedSet<S> for PointList<P>
where
    S: PointedSpace<Point = P> + ?Sized,
    P: Clone + Eq + Hash + Send + Sync,
{
    fn slice(&self, _space: &S, r: f64) -> Result<Vec<P>, SpaceError> {
        if r > self.reach {
            return Err(SpaceError::HorizonExceeded { requested: r, limit: self.reach });
        }
        let mut seen = HashSet::new();
        Ok(self
            .points
            .iter()
            .zip(&self.norms)
            .filter(|(p, &n)| n <= r && seen.insert((*p).clone()))
            .map(|(p, _)| p.clone())
            .collect())
    }

    fn label(&self) -> String {
        self.label.clone()
    }
}
