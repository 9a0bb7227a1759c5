use metric_core::{CyclicOrbit, GroupSpace, PointedSpace, SpaceError, UnboundedSet};
use num_integer::Integer;

use crate::EuclidError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    L1,
    L2,
    Sup,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::L1 => "l1",
            Metric::L2 => "l2",
            Metric::Sup => "sup",
        }
    }
}

/// `ℤᵈ` with an l1, l2 or sup metric and a reference point.
///
/// l1 and sup distances are integers and exact; l2 distances are floats,
/// compared with a documented slack of 1e-12.
#[derive(Debug, Clone, PartialEq)]
pub struct Lattice {
    pub dim: usize,
    pub metric: Metric,
    pub origin: Vec<i64>,
}

impl Lattice {
    pub fn new(dim: usize, metric: Metric) -> Self {
        Lattice { dim, metric, origin: vec![0; dim] }
    }

    pub fn with_origin(mut self, origin: Vec<i64>) -> Self {
        assert_eq!(origin.len(), self.dim);
        self.origin = origin;
        self
    }

    fn raw(&self, x: &[i64], y: &[i64]) -> f64 {
        let diffs = x.iter().zip(y).map(|(a, b)| (a - b) as f64);
        match self.metric {
            Metric::L1 => diffs.map(f64::abs).sum(),
            Metric::L2 => diffs.map(|d| d * d).sum::<f64>().sqrt(),
            Metric::Sup => diffs.map(f64::abs).fold(0.0, f64::max),
        }
    }
}

impl PointedSpace for Lattice {
    type Point = Vec<i64>;

    fn distance(&self, x: &Vec<i64>, y: &Vec<i64>) -> Result<f64, SpaceError> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(SpaceError::DimensionMismatch { expected: self.dim, got: x.len().max(y.len()) });
        }
        Ok(self.raw(x, y))
    }

    fn reference(&self) -> Vec<i64> {
        self.origin.clone()
    }

    fn label(&self) -> String {
        format!("Z{}-{}", self.dim, self.metric.name())
    }
}

impl GroupSpace for Lattice {
    fn identity(&self) -> Vec<i64> {
        vec![0; self.dim]
    }
    fn multiply(&self, g: &Vec<i64>, h: &Vec<i64>) -> Vec<i64> {
        g.iter().zip(h).map(|(a, b)| a + b).collect()
    }
    fn inverse(&self, g: &Vec<i64>) -> Vec<i64> {
        g.iter().map(|a| -a).collect()
    }
    fn power(&self, g: &Vec<i64>, n: i64) -> Vec<i64> {
        g.iter().map(|a| a * n).collect()
    }
}

/// The whole lattice as an unbounded set, listed box row by box row.
#[derive(Debug, Clone, Copy, Default)]
pub struct WholeLattice;

impl UnboundedSet<Lattice> for WholeLattice {
    fn slice(&self, space: &Lattice, r: f64) -> Result<Vec<Vec<i64>>, SpaceError> {
        if !(r >= 0.0) {
            return Err(SpaceError::NegativeRadius(r));
        }
        // Every metric here dominates the sup metric, so the box suffices.
        let m = r.floor() as i64;
        let mut out = Vec::new();
        let mut cur: Vec<i64> = space.origin.iter().map(|o| o - m).collect();
        loop {
            if space.norm(&cur)? <= r {
                out.push(cur.clone());
            }
            let mut k = 0;
            loop {
                if k == space.dim {
                    return Ok(out);
                }
                if cur[k] < space.origin[k] + m {
                    cur[k] += 1;
                    break;
                }
                cur[k] = space.origin[k] - m;
                k += 1;
            }
        }
    }

    fn label(&self) -> String {
        "lattice".into()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sense {
    /// `H_v = {tv : t ≥ 0}`.
    HalfLine,
    /// `L_v = {tv : t ∈ ℝ}`.
    Line,
}

/// A lattice direction `v ≠ 0`, kept together with its primitive
/// (gcd-reduced) representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeDirection {
    pub v: Vec<i64>,
    pub reduced: Vec<i64>,
    pub sense: Sense,
}

impl LatticeDirection {
    pub fn new(v: Vec<i64>, sense: Sense) -> Result<Self, EuclidError> {
        let g = v.iter().fold(0i64, |acc, &a| acc.gcd(&a));
        if g == 0 {
            return Err(EuclidError::ZeroVector);
        }
        let reduced = v.iter().map(|a| a / g).collect();
        Ok(LatticeDirection { v, reduced, sense })
    }

    pub fn half_line(v: Vec<i64>) -> Result<Self, EuclidError> {
        Self::new(v, Sense::HalfLine)
    }

    pub fn line(v: Vec<i64>) -> Result<Self, EuclidError> {
        Self::new(v, Sense::Line)
    }

    /// The lattice points of `H_v` or `L_v`: the orbit of the primitive
    /// vector.
    pub fn orbit(&self) -> CyclicOrbit<Vec<i64>> {
        let name = match self.sense {
            Sense::HalfLine => format!("H{:?}", self.v),
            Sense::Line => format!("L{:?}", self.v),
        };
        match self.sense {
            Sense::HalfLine => CyclicOrbit::semigroup(self.reduced.clone()),
            Sense::Line => CyclicOrbit::group(self.reduced.clone()),
        }
        .named(name)
    }
}
