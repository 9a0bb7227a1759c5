use std::collections::HashSet;

use crate::{norm_within, GroupSpace, SpaceError, UnboundedSet};

/// Default overshoot factor for orbit enumeration.
pub const DEFAULT_OVERSHOOT: u64 = 4;

/// Hard cap on power indices, guarding against bounded (torsion) orbits.
pub const MAX_ORBIT_INDEX: u64 = 50_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrbitSense {
    /// `⟨g⟩⁺ = {gⁿ : n ≥ 0}`.
    Semigroup,
    /// `⟨g⟩ = {gⁿ : n ∈ ℤ}`.
    Group,
}

/// The cyclic orbit `⟨g⟩⁺` or `⟨g⟩` of a group element.
///
/// Norms along an orbit need not be monotone in the power index, so a slice
/// at radius `r` keeps going until the index reaches `overshoot` times the
/// first index whose norm exceeds `2r + d(o, e)`.
#[derive(Debug, Clone)]
pub struct CyclicOrbit<P> {
    pub generator: P,
    pub sense: OrbitSense,
    pub overshoot: u64,
    pub name: String,
}

impl<P: std::fmt::Debug> CyclicOrbit<P> {
    pub fn semigroup(generator: P) -> Self {
        let name = format!("<{:?}>+", generator);
        CyclicOrbit { generator, sense: OrbitSense::Semigroup, overshoot: DEFAULT_OVERSHOOT, name }
    }

    pub fn group(generator: P) -> Self {
        let name = format!("<{:?}>", generator);
        CyclicOrbit { generator, sense: OrbitSense::Group, overshoot: DEFAULT_OVERSHOOT, name }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

impl<P: Clone> CyclicOrbit<P> {
    /// Walk `g, g², …` (or the inverse direction) and collect
    /// `(index, point)` pairs with norm at most `r`.
    fn ray<S>(&self, space: &S, step: &P, sign: i64, r: f64, base: f64) -> Result<Vec<(i64, P)>, SpaceError>
    where
        S: GroupSpace<Point = P> + ?Sized,
    {
        let mut out = Vec::new();
        let mut cur = step.clone();
        let mut first_far: Option<u64> = None;
        let mut n: u64 = 1;
        loop {
            if let Some(n0) = first_far {
                if n > self.overshoot.max(1) * n0 {
                    break;
                }
            }
            if n > MAX_ORBIT_INDEX {
                return Err(SpaceError::HorizonExceeded { requested: r, limit: f64::NAN });
            }
            if first_far.is_none() {
                let far = match space.norm(&cur) {
                    Ok(v) => v > 2.0 * r + base,
                    Err(SpaceError::BeyondHorizon { lower_bound }) => lower_bound > 2.0 * r + base,
                    Err(e) => return Err(e),
                };
                if far {
                    first_far = Some(n);
                }
            }
            if norm_within(space, &cur, r)?.is_some() {
                out.push((sign * n as i64, cur.clone()));
            }
            cur = space.multiply(&cur, step);
            n += 1;
        }
        Ok(out)
    }
}

impl<S, P> UnboundedSet<S> for CyclicOrbit<P>
where
    S: GroupSpace<Point = P> + ?Sized,
    P: Clone + Eq + std::hash::Hash + Send + Sync + std::fmt::Debug,
{
    fn slice(&self, space: &S, r: f64) -> Result<Vec<P>, SpaceError> {
        if !(r >= 0.0) {
            return Err(SpaceError::NegativeRadius(r));
        }
        let mut indexed = Vec::new();
        let e = space.identity();
        // With a shifted reference point, growth is measured from the
        // identity: the far threshold is raised by d(o, e).
        let base = match space.norm(&e) {
            Ok(v) => v,
            Err(SpaceError::BeyondHorizon { lower_bound }) => {
                return Err(SpaceError::HorizonExceeded { requested: r, limit: lower_bound })
            }
            Err(err) => return Err(err),
        };
        if base <= r {
            indexed.push((0i64, e));
        }
        let pos = self.ray(space, &self.generator, 1, r, base)?;
        let neg = match self.sense {
            OrbitSense::Semigroup => Vec::new(),
            OrbitSense::Group => self.ray(space, &space.inverse(&self.generator), -1, r, base)?,
        };
        // Interleave as 0, 1, -1, 2, -2, ... so the order is the natural
        // index order |n| with positive first.
        let mut merged: Vec<(i64, P)> = pos.into_iter().chain(neg).collect();
        merged.sort_by_key(|(n, _)| (n.unsigned_abs(), *n < 0));
        indexed.extend(merged);
        let mut seen = HashSet::new();
        Ok(indexed.into_iter().filter(|(_, p)| seen.insert(p.clone())).map(|(_, p)| p).collect())
    }

    fn label(&self) -> String {
        self.name.clone()
    }
}
