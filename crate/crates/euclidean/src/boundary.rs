use cone_metric::{gap_components, identify, s_between, Candidates, TailWindow};
use num_integer::Integer;

use crate::{l2_line_s_exact, EuclidError, Lattice, LatticeDirection, Metric, Sense};

/// Primitive vectors of `ℤᵈ` with all coordinates in `[-order, order]`.
///
/// In the plane these are the Farey directions of denominator at most
/// `order`, listed counterclockwise from `(1, 0)`; otherwise they are in
/// lexicographic order.
pub fn farey_directions(dim: usize, order: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![-order; dim];
    loop {
        let g = cur.iter().fold(0i64, |acc, &a| acc.gcd(&a));
        if g == 1 {
            out.push(cur.clone());
        }
        let mut k = dim;
        loop {
            if k == 0 {
                if dim == 2 {
                    let angle = |v: &Vec<i64>| {
                        let t = (v[1] as f64).atan2(v[0] as f64);
                        if t < 0.0 { t + std::f64::consts::TAU } else { t }
                    };
                    out.sort_by(|a, b| angle(a).total_cmp(&angle(b)));
                }
                return out;
            }
            k -= 1;
            if cur[k] < order {
                cur[k] += 1;
                break;
            }
            cur[k] = -order;
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct BoundaryOptions {
    pub window: TailWindow,
    /// Directions closer than `1 − theta` in `t̂` are linked.
    pub theta: f64,
    /// Coordinate bound for sampled directions; `None` picks 2 in the plane
    /// (16 directions) and in space (98 directions).
    pub order: Option<i64>,
}

impl Default for BoundaryOptions {
    fn default() -> Self {
        BoundaryOptions {
            window: TailWindow::starting_at(100.0).expect("valid default window"),
            theta: 0.3,
            order: None,
        }
    }
}

/// Sampled linear and projective boundary of a lattice `ℤᵈ` under l2.
#[derive(Debug, Clone)]
pub struct BoundaryReport {
    pub dim: usize,
    pub directions: Vec<Vec<i64>>,
    /// Half-line `t̂` matrix.
    pub t_hat: Vec<Vec<f64>>,
    /// `√sin(min(π/2, ∠))` matrix.
    pub oracle: Vec<Vec<f64>>,
    pub saturated: Vec<Vec<bool>>,
    pub max_deviation: f64,
    pub components: Vec<Vec<usize>>,
    /// Largest line-sense `t̂` between a direction and its negative.
    pub antipodal_max: f64,
    pub projective_components: Vec<Vec<usize>>,
}

/// Sample directions of `ℝᵃ × ℤᵇ`, compare estimated `t̂` between half-lines
/// with the sphere metric, and group them into components.
///
/// The continuous factors are represented by the lattice `ℤᵃ⁺ᵇ`, which is
/// quasi-isometric to them.
pub fn boundary_check(a: usize, b: usize, opts: &BoundaryOptions) -> Result<BoundaryReport, EuclidError> {
    let dim = a + b;
    if !(1..=3).contains(&dim) {
        return Err(EuclidError::UnsupportedDimension(dim));
    }
    let order = opts.order.unwrap_or(if dim == 1 { 1 } else { 2 });
    let directions = farey_directions(dim, order);
    let space = Lattice::new(dim, Metric::L2);
    let n = directions.len();
    let reach = opts.window.cap * opts.window.r_max;
    let build = |v: &Vec<i64>, sense: Sense| -> Result<Candidates<Vec<i64>>, EuclidError> {
        let orbit = LatticeDirection::new(v.clone(), sense)?.orbit();
        Ok(Candidates::build(&space, &orbit, reach)?)
    };
    let halves: Vec<_> = directions.iter().map(|v| build(v, Sense::HalfLine)).collect::<Result<_, _>>()?;

    let mut t_hat = vec![vec![0.0; n]; n];
    let mut oracle = vec![vec![0.0; n]; n];
    let mut saturated = vec![vec![false; n]; n];
    let mut max_deviation: f64 = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let mut e = s_between(&space, &halves[i], &halves[j], &opts.window)?;
            e.value = e.value.sqrt();
            let o = l2_line_s_exact(&directions[i], &directions[j], Sense::HalfLine)?.sqrt();
            t_hat[i][j] = e.value;
            t_hat[j][i] = e.value;
            oracle[i][j] = o;
            oracle[j][i] = o;
            saturated[i][j] = e.saturated;
            saturated[j][i] = e.saturated;
            max_deviation = max_deviation.max((e.value - o).abs());
        }
    }
    let components = gap_components(&t_hat, opts.theta);

    let mut partner = vec![None; n];
    let mut antipodal_max: f64 = 0.0;
    for i in 0..n {
        let neg: Vec<i64> = directions[i].iter().map(|c| -c).collect();
        if let Some(j) = directions.iter().position(|v| *v == neg) {
            partner[i] = Some(j);
            if i < j {
                let li = build(&directions[i], Sense::Line)?;
                let lj = build(&neg, Sense::Line)?;
                antipodal_max = antipodal_max.max(s_between(&space, &li, &lj, &opts.window)?.value.sqrt());
            }
        }
    }
    let projective_components = identify(&components, &partner);
    Ok(BoundaryReport {
        dim,
        directions,
        t_hat,
        oracle,
        saturated,
        max_deviation,
        components,
        antipodal_max,
        projective_components,
    })
}
