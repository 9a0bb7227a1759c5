use std::sync::Arc;

use metric_core::{CyclicOrbit, GroupSpace, OrbitSense, PointedSpace, SpaceError};

use crate::element::{LieGauge, H};
use crate::table::{WordLength, WordMetricTable};
use crate::HeisError;

/// How distances are measured.
#[derive(Debug, Clone)]
pub enum HeisenbergMetric {
    /// Word metric; lengths beyond twice the table radius are unknown.
    Word(Arc<WordMetricTable>),
    /// The Lie gauge `⟦x⁻¹y⟧`. A quasi-metric: the triangle inequality
    /// holds only up to an additive constant.
    Gauge(LieGauge),
    /// Word metric where known, gauge otherwise. Use
    /// [`HeisenbergSpace::uses_fallback`] to flag affected distances.
    WordOrGauge(Arc<WordMetricTable>, LieGauge),
}

/// The integer Heisenberg group as a pointed metric space.
#[derive(Debug, Clone)]
pub struct HeisenbergSpace {
    pub metric: HeisenbergMetric,
    pub reference: H,
}

impl HeisenbergSpace {
    pub fn word(table: Arc<WordMetricTable>) -> Self {
        HeisenbergSpace { metric: HeisenbergMetric::Word(table), reference: H::IDENTITY }
    }

    pub fn gauge(g: LieGauge) -> Self {
        HeisenbergSpace { metric: HeisenbergMetric::Gauge(g), reference: H::IDENTITY }
    }

    pub fn word_or_gauge(table: Arc<WordMetricTable>, g: LieGauge) -> Self {
        HeisenbergSpace { metric: HeisenbergMetric::WordOrGauge(table, g), reference: H::IDENTITY }
    }

    pub fn with_reference(mut self, o: H) -> Self {
        self.reference = o;
        self
    }

    /// Length of `g` from the identity.
    pub fn length(&self, g: &H) -> Result<f64, SpaceError> {
        match &self.metric {
            HeisenbergMetric::Word(t) => match t.word_length(g) {
                WordLength::Exact(l) => Ok(l as f64),
                WordLength::AtLeast(l) => Err(SpaceError::BeyondHorizon { lower_bound: l as f64 }),
            },
            HeisenbergMetric::Gauge(q) => Ok(q.value(g)),
            HeisenbergMetric::WordOrGauge(t, q) => match t.word_length(g) {
                WordLength::Exact(l) => Ok(l as f64),
                WordLength::AtLeast(_) => Ok(q.value(g)),
            },
        }
    }

    /// Whether `d(x, y)` came from the gauge rather than the word metric.
    pub fn uses_fallback(&self, x: &H, y: &H) -> bool {
        match &self.metric {
            HeisenbergMetric::Word(_) => false,
            HeisenbergMetric::Gauge(_) => true,
            HeisenbergMetric::WordOrGauge(t, _) => {
                matches!(t.word_length(&H::between(x, y)), WordLength::AtLeast(_))
            }
        }
    }
}

impl PointedSpace for HeisenbergSpace {
    type Point = H;

    fn distance(&self, x: &H, y: &H) -> Result<f64, SpaceError> {
        self.length(&H::between(x, y))
    }

    fn reference(&self) -> H {
        self.reference
    }

    fn label(&self) -> String {
        match &self.metric {
            HeisenbergMetric::Word(t) => format!("H3(Z) word metric, BFS radius {}", t.radius()),
            HeisenbergMetric::Gauge(_) => "H3(Z) gauge".into(),
            HeisenbergMetric::WordOrGauge(t, _) => format!("H3(Z) word metric (radius {}) with gauge fallback", t.radius()),
        }
    }
}

impl GroupSpace for HeisenbergSpace {
    fn identity(&self) -> H {
        H::IDENTITY
    }

    fn multiply(&self, g: &H, h: &H) -> H {
        g.mul(h)
    }

    fn inverse(&self, g: &H) -> H {
        g.inverse()
    }

    fn power(&self, g: &H, n: i64) -> H {
        g.pow(n)
    }
}

/// `⟨g⟩⁺` or `⟨g⟩`. The group is torsion free, so any `g ≠ 1` has an
/// unbounded orbit.
pub fn orbit(g: H, sense: OrbitSense) -> Result<CyclicOrbit<H>, HeisError> {
    if g.is_identity() {
        return Err(HeisError::InvalidGenerator("the identity has a bounded orbit".into()));
    }
    let o = match sense {
        OrbitSense::Semigroup => CyclicOrbit::semigroup(g).named(format!("<{g}>+")),
        OrbitSense::Group => CyclicOrbit::group(g).named(format!("<{g}>")),
    };
    Ok(o)
}
