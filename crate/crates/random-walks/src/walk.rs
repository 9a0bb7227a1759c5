use metric_core::{PointList, PointedSpace, SpaceError, UnboundedSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::drift::StepDistribution;
use crate::layered::Layered;
use crate::WalkError;

/// Recorded in every report next to the seed.
pub const RNG_ALGORITHM: &str = "ChaCha8Rng::seed_from_u64";

/// The points `S₁, …, S_L` of one walk with their norms.
///
/// As an unbounded set it is exact only up to `reach`, the smallest norm
/// over the last tenth of the walk: later steps are assumed not to come
/// back inside that ball.
#[derive(Debug, Clone)]
pub struct Trajectory<P> {
    pub list: PointList<P>,
    /// Per point: the norm came from a fallback metric.
    pub fallback: Vec<bool>,
    pub seed: u64,
}

impl<P> Trajectory<P> {
    pub fn points(&self) -> &[P] {
        &self.list.points
    }

    pub fn norms(&self) -> &[f64] {
        &self.list.norms
    }

    pub fn reach(&self) -> f64 {
        self.list.reach
    }

    pub fn fallback_count(&self) -> usize {
        self.fallback.iter().filter(|&&f| f).count()
    }
}

impl<S, P> UnboundedSet<S> for Trajectory<P>
where
    S: PointedSpace<Point = P> + ?Sized,
    P: Clone + Eq + std::hash::Hash + Send + Sync,
{
    fn slice(&self, space: &S, r: f64) -> Result<Vec<P>, SpaceError> {
        self.list.slice(space, r)
    }

    fn label(&self) -> String {
        self.list.label.clone()
    }
}

/// Run `len` steps of the walk `S_k = X₁⋯X_k` from the identity.
pub fn simulate<S: Layered>(
    space: &S,
    dist: &StepDistribution<S::Point>,
    len: usize,
    seed: u64,
) -> Result<Trajectory<S::Point>, WalkError> {
    if len == 0 {
        return Err(WalkError::EmptyWalk);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = space.identity();
    let mut points = Vec::with_capacity(len);
    for _ in 0..len {
        let i = dist.pick(rng.random_range(0..dist.denominator()));
        cur = space.multiply(&cur, &dist.support()[i]);
        points.push(cur.clone());
    }
    let norms = points.iter().map(|p| space.norm(p)).collect::<Result<Vec<_>, _>>()?;
    let fallback = points.iter().map(|p| space.norm_uses_fallback(p)).collect();
    let tail = len - len.div_ceil(10);
    let reach = norms[tail..].iter().copied().fold(f64::INFINITY, f64::min);
    let list = PointList::with_norms(format!("walk(seed={seed})"), points, norms, reach);
    Ok(Trajectory { list, fallback, seed })
}
