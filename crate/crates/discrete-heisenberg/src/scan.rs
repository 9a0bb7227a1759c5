use cone_metric::{gap_components, s_between, spearman, Candidates, ConeError, TailWindow};
use metric_core::{OrbitSense, SpaceError};
use rayon::prelude::*;

use crate::element::H;
use crate::space::{orbit, HeisenbergSpace};
use crate::HeisError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanOptions {
    pub window: TailWindow,
    /// Directions with `t̂ < 1 − theta` are linked.
    pub theta: f64,
}

impl Default for ScanOptions {
    /// Window `[8, 20]` with cap 2, so candidates reach length 40, inside
    /// the exact range of a radius-22 table.
    fn default() -> Self {
        ScanOptions { window: TailWindow::new(8.0, 20.0, 2.0).expect("valid window"), theta: 0.3 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CellFlag {
    Ok,
    Saturated,
    /// A needed distance was beyond the word-length horizon; the value is NaN.
    Horizon,
}

impl CellFlag {
    pub fn code(self) -> char {
        match self {
            CellFlag::Ok => '.',
            CellFlag::Saturated => 'S',
            CellFlag::Horizon => 'H',
        }
    }
}

/// Symmetric `t̂` matrix with zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct TMatrix {
    pub values: Vec<Vec<f64>>,
    pub flags: Vec<Vec<CellFlag>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport {
    pub directions: Vec<H>,
    /// Between the semigroups `⟨g⟩⁺`.
    pub linear: TMatrix,
    /// Between the subgroups `⟨g⟩`.
    pub projective: TMatrix,
    pub components: Vec<Vec<usize>>,
    pub projective_components: Vec<Vec<usize>>,
}

impl ScanReport {
    pub fn labels(&self) -> Vec<String> {
        self.directions.iter().map(|g| g.to_string()).collect()
    }
}

/// `{(1,0,0), (0,1,0), (1,1,0), (0,0,1), (0,0,−1)}`.
pub fn standard_directions() -> Vec<H> {
    vec![H::new(1, 0, 0), H::new(0, 1, 0), H::new(1, 1, 0), H::new(0, 0, 1), H::new(0, 0, -1)]
}

/// The 16 primitive `(a, b, 0)` with `|a|, |b| ≤ 2`, counterclockwise from
/// `(1, 0, 0)`.
pub fn horizontal_directions() -> Vec<H> {
    let mut v = Vec::new();
    for a in -2i64..=2 {
        for b in -2i64..=2 {
            if (a, b) != (0, 0) && gcd(a, b) == 1 {
                v.push(H::new(a, b, 0));
            }
        }
    }
    v.sort_by(|g, h| angle(g).total_cmp(&angle(h)));
    v
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn angle(g: &H) -> f64 {
    let t = (g.b as f64).atan2(g.a as f64);
    if t < 0.0 {
        t + std::f64::consts::TAU
    } else {
        t
    }
}

fn t_matrix(space: &HeisenbergSpace, dirs: &[H], sense: OrbitSense, w: &TailWindow) -> Result<TMatrix, HeisError> {
    let n = dirs.len();
    let reach = w.cap * w.r_max;
    let cands: Vec<Option<Candidates<H>>> = dirs
        .par_iter()
        .map(|g| match Candidates::build(space, &orbit(*g, sense)?, reach) {
            Ok(c) => Ok(Some(c)),
            Err(e) if is_horizon(&e) => Ok(None),
            Err(e) => Err(HeisError::from(e)),
        })
        .collect::<Result<_, _>>()?;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
    let cells: Vec<(f64, CellFlag)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (Some(a), Some(b)) = (&cands[i], &cands[j]) else {
                return Ok((f64::NAN, CellFlag::Horizon));
            };
            match s_between(space, a, b, w) {
                Ok(e) => Ok((e.value.sqrt(), if e.saturated { CellFlag::Saturated } else { CellFlag::Ok })),
                Err(e) if is_horizon(&e) => Ok((f64::NAN, CellFlag::Horizon)),
                Err(e) => Err(HeisError::from(e)),
            }
        })
        .collect::<Result<_, HeisError>>()?;
    let mut values = vec![vec![0.0; n]; n];
    let mut flags = vec![vec![CellFlag::Ok; n]; n];
    for (&(i, j), &(v, f)) in pairs.iter().zip(&cells) {
        values[i][j] = v;
        values[j][i] = v;
        flags[i][j] = f;
        flags[j][i] = f;
    }
    Ok(TMatrix { values, flags })
}

fn is_horizon(e: &ConeError) -> bool {
    matches!(e, ConeError::Space(SpaceError::BeyondHorizon { .. } | SpaceError::HorizonExceeded { .. }))
}

/// Pairwise `t̂` between the cyclic semigroups and between the cyclic
/// subgroups of `dirs`, grouped into components by gap linkage.
///
/// Subgroups `⟨g⟩` and `⟨g⁻¹⟩` coincide, so a direction and its inverse
/// are identified in the projective matrix automatically.
pub fn boundary_scan(space: &HeisenbergSpace, dirs: &[H], opts: &ScanOptions) -> Result<ScanReport, HeisError> {
    if dirs.is_empty() {
        return Err(HeisError::InvalidGenerator("no directions".into()));
    }
    let linear = t_matrix(space, dirs, OrbitSense::Semigroup, &opts.window)?;
    let projective = t_matrix(space, dirs, OrbitSense::Group, &opts.window)?;
    let components = gap_components(&linear.values, opts.theta);
    let projective_components = gap_components(&projective.values, opts.theta);
    Ok(ScanReport { directions: dirs.to_vec(), linear, projective, components, projective_components })
}

/// The circle distance between abelianized directions, `√sin(min(π/2, ∠))`.
pub fn abelian_angle_oracle(g: &H, h: &H) -> f64 {
    let (a, b) = ((g.a as f64, g.b as f64), (h.a as f64, h.b as f64));
    let cross = a.0 * b.1 - a.1 * b.0;
    let dot = a.0 * b.0 + a.1 * b.1;
    let ang = cross.abs().atan2(dot);
    ang.min(std::f64::consts::FRAC_PI_2).sin().sqrt()
}

/// Spearman correlation between `t̂` and the abelianized angle oracle over
/// pairs of horizontal directions with known values.
pub fn horizontal_spearman(report: &ScanReport) -> Option<f64> {
    let d = &report.directions;
    let (mut est, mut oracle) = (Vec::new(), Vec::new());
    for i in 0..d.len() {
        for j in (i + 1)..d.len() {
            let horizontal = |g: &H| g.abelian() != (0, 0);
            let v = report.linear.values[i][j];
            if horizontal(&d[i]) && horizontal(&d[j]) && v.is_finite() {
                est.push(v);
                oracle.push(abelian_angle_oracle(&d[i], &d[j]));
            }
        }
    }
    (est.len() >= 2).then(|| spearman(&est, &oracle))
}
