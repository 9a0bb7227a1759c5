//! Integer lattices `ℤᵈ` under the l1, l2 and sup metrics, their line and
//! half-line orbits, and closed-form values of the angle distance between
//! rays that serve as ground truth for the tail estimators.

mod boundary;
mod oracle;
mod space;
mod zigzag;

pub use boundary::{boundary_check, farey_directions, BoundaryOptions, BoundaryReport};
pub use oracle::{
    angle_bounds_hold, l1_ray_s_exact, l1_ray_s_plus_exact, l2_line_s_exact, ray_angle, Exact,
};
pub use space::{Lattice, LatticeDirection, Metric, Sense, WholeLattice};
pub use zigzag::ZigZagRay;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EuclidError {
    #[error("zero vector has no direction")]
    ZeroVector,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),
    #[error(transparent)]
    Cone(#[from] cone_metric::ConeError),
}
