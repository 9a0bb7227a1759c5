//! Random walks with drift on lattices and on the integer Heisenberg group,
//! and checks that their trajectories stay sublinearly close to the cyclic
//! semigroup generated by the drift.

mod converge;
mod drift;
mod layered;
mod walk;

pub use converge::{convergence_check, default_windows, run_seeds, window_noise, ConvergenceReport, WindowRow};
pub use drift::{drift_element, DriftSpec, StepDistribution};
pub use layered::Layered;
pub use walk::{simulate, Trajectory, RNG_ALGORITHM};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum WalkError {
    #[error("invalid step distribution: {0}")]
    InvalidDistribution(String),
    /// The step law has zero expectation in its layer, so there is no
    /// boundary direction to converge to.
    #[error("the walk has no drift: zero expectation in layer {0}")]
    NoDrift(usize),
    #[error("walk length must be at least 1")]
    EmptyWalk,
    #[error("trajectory too short for the requested windows: {0}")]
    TooShort(String),
    #[error(transparent)]
    Cone(#[from] cone_metric::ConeError),
    #[error(transparent)]
    Space(#[from] metric_core::SpaceError),
}
