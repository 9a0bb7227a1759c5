use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::layered::Layered;
use crate::WalkError;

/// A finitely supported step law with exact rational probabilities.
#[derive(Debug, Clone, PartialEq)]
pub struct StepDistribution<P> {
    support: Vec<P>,
    probs: Vec<Rational64>,
    /// Integer weights over a common denominator, for exact sampling.
    weights: Vec<i64>,
    denominator: i64,
}

impl<P: Clone> StepDistribution<P> {
    pub fn new(support: Vec<P>, probs: Vec<Rational64>) -> Result<Self, WalkError> {
        if support.is_empty() {
            return Err(WalkError::InvalidDistribution("empty support".into()));
        }
        if support.len() != probs.len() {
            return Err(WalkError::InvalidDistribution(format!(
                "{} steps but {} probabilities",
                support.len(),
                probs.len()
            )));
        }
        if let Some(p) = probs.iter().find(|p| **p <= Rational64::zero()) {
            return Err(WalkError::InvalidDistribution(format!("non-positive probability {p}")));
        }
        let total: Rational64 = probs.iter().sum();
        if !total.is_one() {
            return Err(WalkError::InvalidDistribution(format!("probabilities sum to {total}")));
        }
        let denominator = probs.iter().fold(1i64, |l, p| l.lcm(p.denom()));
        let weights = probs.iter().map(|p| p.numer() * (denominator / p.denom())).collect();
        Ok(StepDistribution { support, probs, weights, denominator })
    }

    pub fn uniform(support: Vec<P>) -> Result<Self, WalkError> {
        let n = support.len() as i64;
        Self::new(support, vec![Rational64::new(1, n.max(1)); n as usize])
    }

    /// The point mass at `g`.
    pub fn dirac(g: P) -> Self {
        Self::new(vec![g], vec![Rational64::one()]).expect("point mass is valid")
    }

    pub fn support(&self) -> &[P] {
        &self.support
    }

    pub fn probs(&self) -> &[Rational64] {
        &self.probs
    }

    /// Push the law forward along `f`, keeping the support order so that a
    /// shared seed draws matching steps.
    pub fn map<Q: Clone>(&self, f: impl Fn(&P) -> Q) -> StepDistribution<Q> {
        StepDistribution {
            support: self.support.iter().map(f).collect(),
            probs: self.probs.clone(),
            weights: self.weights.clone(),
            denominator: self.denominator,
        }
    }

    /// Index of the support element selected by `u ∈ [0, denominator)`.
    pub(crate) fn pick(&self, mut u: i64) -> usize {
        for (i, &w) in self.weights.iter().enumerate() {
            if u < w {
                return i;
            }
            u -= w;
        }
        unreachable!("u below the common denominator")
    }

    pub(crate) fn denominator(&self) -> i64 {
        self.denominator
    }
}

/// The boundary direction a drifting walk converges to.
#[derive(Debug, Clone, PartialEq)]
pub struct DriftSpec<P> {
    /// The deepest `n` with every step in `G_n`.
    pub layer: usize,
    /// `E(S₁ G_{n+1})` in layer coordinates.
    pub drift: Vec<Rational64>,
    /// The drift scaled to integers and lifted to `G_n`.
    pub representative: P,
    /// `representative = scaling · drift` in layer coordinates.
    pub scaling: i64,
}

/// Layer and expected step of `dist`. Centred walks are rejected.
pub fn drift_element<S: Layered>(space: &S, dist: &StepDistribution<S::Point>) -> Result<DriftSpec<S::Point>, WalkError> {
    let layer = dist.support.iter().filter_map(|g| space.layer_of(g)).min().ok_or(WalkError::NoDrift(1))?;
    let mut drift: Vec<Rational64> = Vec::new();
    for (g, p) in dist.support.iter().zip(&dist.probs) {
        if space.layer_of(g).is_none() {
            continue;
        }
        let coords = space.layer_coords(g, layer);
        if drift.is_empty() {
            drift = vec![Rational64::zero(); coords.len()];
        }
        for (d, x) in drift.iter_mut().zip(coords) {
            *d += p * Rational64::from_integer(x);
        }
    }
    if drift.iter().all(Zero::is_zero) {
        return Err(WalkError::NoDrift(layer));
    }
    let scaling = drift.iter().fold(1i64, |l, d| l.lcm(d.denom()));
    let coords: Vec<i64> = drift.iter().map(|d| (d * scaling).to_integer()).collect();
    Ok(DriftSpec { layer, representative: space.layer_element(layer, &coords), drift, scaling })
}
