//! The integer Heisenberg group `H₃(ℤ)` in Mal'tsev coordinates, its word
//! metric through breadth-first tables, cyclic orbits, and boundary scans
//! separating horizontal from central directions.

mod element;
mod growth;
mod scan;
mod space;
mod table;

pub use element::{HeisenbergElement, LieGauge, H};
pub use growth::{ball_growth, empirical_q, growth_fit, GrowthFit, QEstimate};
pub use scan::{
    abelian_angle_oracle, boundary_scan, horizontal_directions, horizontal_spearman, standard_directions, CellFlag,
    ScanOptions, ScanReport, TMatrix,
};
pub use space::{orbit, HeisenbergMetric, HeisenbergSpace};
pub use table::{GeneratingSet, WordLength, WordMetricTable, DEFAULT_BUDGET, DEFAULT_RADIUS};

use cone_metric::ConeError;
use metric_core::SpaceError;

#[derive(Debug, thiserror::Error)]
pub enum HeisError {
    #[error("generating set is not symmetric: {0} has no inverse in it")]
    NotSymmetric(String),
    #[error("generating set does not generate the group")]
    NotGenerating,
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("BFS table needs {needed} entries, over the budget of {budget}")]
    MemoryBudgetExceeded { needed: u64, budget: u64 },
    #[error("radius {0} does not fit the one-byte table")]
    RadiusTooLarge(u32),
    #[error("table cache: {0}")]
    Cache(String),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error(transparent)]
    Space(#[from] SpaceError),
}
