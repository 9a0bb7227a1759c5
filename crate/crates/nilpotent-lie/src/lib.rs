//! Graded nilpotent Lie algebras over the rationals, their group law via
//! the truncated Baker-Campbell-Hausdorff series, the homogeneous gauge,
//! and checks of the inequalities that relate products of powers to it.

mod algebra;
mod angles;
mod bch;
mod bounds;
mod config;
mod gauge;
mod sample;

pub use algebra::{
    abelian, bundled, free_class2, free_class3_rank2, h3, h5, heisenberg, int, rat, upper_triangular, Constant,
    GradedLieAlgebra, LieVector, Rational, BUNDLED,
};
pub use angles::{s_plus_additive_exact, s_plus_mult_estimate, shifted_power_gauge, Span};
pub use bch::{
    bch_product, eval_in, inverse, inverse_shift_expansion, power, q_constant, ScaledProduct, BCH_MAX_DEGREE,
    BCH_TABLE,
};
pub use bounds::{
    bound_constants, gauge_suite, growth_bounds_check, BoundConstants, BoundParams, GrowthBound, PropertyRow,
};
pub use config::{load_algebra, parse_algebra, to_toml, AlgebraConfig};
pub use gauge::{
    from_layers_with, raw_layer_norms, rescale_norms, rescale_norms_from, tolerance, triangle_sample,
    triangle_violation, worst_excess, Gauge, PairNorms, Rescaled, Root, RESCALE_SAMPLES, RESCALE_SEED,
    RESCALE_STEPS,
};
pub use sample::{random_from_layer, random_in_layer, random_rational, random_scaled, random_unit};

use cone_metric::ConeError;

#[derive(Debug, thiserror::Error)]
pub enum LieError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("class {class} exceeds the BCH table (degree {max})")]
    ClassExceedsTable { class: usize, max: usize },
    #[error("case not covered: {0}")]
    CaseNotCovered(String),
    #[error("no scale on the grid passed; largest violation {largest_violation}")]
    SearchExhausted { largest_violation: f64 },
    #[error("antisymmetry violated by [{}, {}] -> {}", .0[0], .0[1], .0[2])]
    Antisymmetry([String; 3]),
    #[error("Jacobi identity fails on ({}, {}, {})", .0[0], .0[1], .0[2])]
    Jacobi([String; 3]),
    #[error("grading violated: [{}, {}] has a component on {}", .0[0], .0[1], .0[2])]
    Grading([String; 3]),
    #[error("layer {layer} is not spanned by brackets with the first layer")]
    Generation { layer: usize },
    #[error("config: {0}")]
    Config(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Cone(#[from] ConeError),
}
