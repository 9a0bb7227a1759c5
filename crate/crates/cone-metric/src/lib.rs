//! Cones `αR+a`, the one-sided distance `s⁺`, its symmetrization `s` and the
//! angle pseudometric `t = √s` between unbounded sets, realized through
//! finite tail windows.
//!
//! Nothing here knows about concrete spaces. Everything runs on
//! [`metric_core::PointedSpace`] and [`metric_core::UnboundedSet`].

mod cone;
mod estimate;
mod linkage;
mod quasi;
mod triangle;

pub use cone::{
    cone_contains, constant_growth_check, neighborhood_contains_point, neighborhood_contains_set,
    GrowthReport,
};
pub use estimate::{
    inner_ratio, ratio_against, s_between, s_estimate, s_plus_against, s_plus_between, s_plus_estimate, t_estimate,
    Candidates, InnerRatio,
};
pub use linkage::{gap_components, identify, spearman};
pub use quasi::{check_quasi_isometry, pushforward, Pushforward, QuasiIsometry};
pub use triangle::{weak_triangle_check, weak_triangle_values, TriangleReport};

use metric_core::SpaceError;

/// Default cap factor: candidate points are searched up to `K·‖y‖`.
pub const DEFAULT_CAP: f64 = 10.0;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConeError {
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("no candidate points of positive norm in the reference set")]
    EmptySlice,
    #[error("no points of the probed set fall inside the window [{r_min}, {r_max}]")]
    EmptyWindow { r_min: f64, r_max: f64 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("estimate {estimate} is within {slack} of the threshold {alpha}; undecidable at this horizon")]
    Undecidable { estimate: f64, alpha: f64, slack: f64 },
}

/// Parameters of the cone `αR+a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeParams {
    pub alpha: f64,
    pub a: f64,
}

impl ConeParams {
    pub fn new(alpha: f64, a: f64) -> Result<Self, ConeError> {
        if !(alpha >= 0.0 && a >= 0.0) {
            return Err(ConeError::InvalidParams(format!("alpha = {alpha}, a = {a}")));
        }
        Ok(ConeParams { alpha, a })
    }

    /// Radius of the ball around a point of norm `n`.
    pub fn radius(&self, n: f64) -> f64 {
        self.alpha * n + self.a
    }
}

/// A finite window `[r_min, r_max]` standing in for a tail, plus the cap
/// factor `K` bounding the candidate search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailWindow {
    pub r_min: f64,
    pub r_max: f64,
    pub cap: f64,
}

impl TailWindow {
    pub fn new(r_min: f64, r_max: f64, cap: f64) -> Result<Self, ConeError> {
        if !(r_min >= 0.0 && r_min < r_max && cap >= 2.0) || !r_max.is_finite() {
            return Err(ConeError::InvalidParams(format!(
                "window [{r_min}, {r_max}] with cap {cap}"
            )));
        }
        Ok(TailWindow { r_min, r_max, cap })
    }

    /// `[r, 10r]` with `K = 10`.
    pub fn starting_at(r: f64) -> Result<Self, ConeError> {
        Self::new(r, 10.0 * r, DEFAULT_CAP)
    }

    /// Values at or above this cannot be certified by the capped search.
    pub fn saturation_threshold(&self) -> f64 {
        1.0 - 1.0 / self.cap
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EstimateKind {
    Exact,
    Estimate,
}

/// A value of `s⁺`, `s` or `t` with its provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceEstimate {
    /// In `[0, 1]`. Raw values above 1 only arise from the cap and are
    /// reported as 1 with `saturated` set.
    pub value: f64,
    pub kind: EstimateKind,
    pub window: Option<TailWindow>,
    pub saturated: bool,
}

impl DistanceEstimate {
    pub fn exact(value: f64) -> Self {
        DistanceEstimate { value, kind: EstimateKind::Exact, window: None, saturated: false }
    }

    pub fn estimated(raw: f64, window: TailWindow) -> Self {
        DistanceEstimate {
            value: raw.clamp(0.0, 1.0),
            kind: EstimateKind::Estimate,
            window: Some(window),
            saturated: raw >= window.saturation_threshold(),
        }
    }
}
