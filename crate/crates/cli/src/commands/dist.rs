use cone_metric::{s_estimate, s_plus_estimate};
use euclidean::{l1_ray_s_exact, l2_line_s_exact, Lattice, LatticeDirection, Metric, Sense};

use crate::config::{parse_lattice_space, LineSense, Window};
use crate::table::{Cell, Table};
use crate::{CliError, Outcome};

fn err(e: impl std::fmt::Display) -> CliError {
    CliError::Run(e.to_string())
}

/// `ŝ⁺` both ways, `ŝ` and `t̂` between two lattice lines or half-lines,
/// with the closed form where one is known.
///
/// `window_error` is the lattice granularity `max(‖a‖, ‖b‖) / r_min`: the
/// orbit points nearest a tail point are at most one step from the
/// continuous optimum, and the ratio is taken at norms of at least `r_min`.
pub fn run(space: &str, a: &[i64], b: &[i64], sense: LineSense, window: &Window) -> Result<Outcome, CliError> {
    let (dim, metric) = parse_lattice_space(space)?;
    let sp = Lattice::new(dim, metric);
    let w = window.tail()?;
    let sense = match sense {
        LineSense::Line => Sense::Line,
        LineSense::HalfLine => Sense::HalfLine,
    };
    let orbit = |v: &[i64]| LatticeDirection::new(v.to_vec(), sense).map(|d| d.orbit()).map_err(err);
    let (ra, rb) = (orbit(a)?, orbit(b)?);
    let ab = s_plus_estimate(&sp, &ra, &rb, &w).map_err(err)?;
    let ba = s_plus_estimate(&sp, &rb, &ra, &w).map_err(err)?;
    let s = s_estimate(&sp, &ra, &rb, &w).map_err(err)?;
    let step = |v: &[i64]| {
        let g = euclidean::LatticeDirection::new(v.to_vec(), sense).expect("checked above").reduced;
        metric_core::PointedSpace::norm(&sp, &g).unwrap_or(f64::NAN)
    };
    let window_error = step(a).max(step(b)) / w.r_min;
    let oracle = match metric {
        Metric::L1 => Cell::text(l1_ray_s_exact(a, b, sense).map_err(err)?.to_string()),
        Metric::L2 => Cell::Num(l2_line_s_exact(a, b, sense).map_err(err)?),
        Metric::Sup => Cell::Empty,
    };
    let join = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    let mut t = Table::new(&[
        "space", "a", "b", "sense", "r_min", "r_max", "cap", "s_plus_ab", "s_plus_ba", "s", "t", "saturated", "window_error", "exact_s",
    ]);
    t.push(vec![
        Cell::text(space),
        Cell::text(join(a)),
        Cell::text(join(b)),
        Cell::text(if sense == Sense::Line { "line" } else { "half-line" }),
        Cell::Num(w.r_min),
        Cell::Num(w.r_max),
        Cell::Num(w.cap),
        Cell::Num(ab.value),
        Cell::Num(ba.value),
        Cell::Num(s.value),
        Cell::Num(s.value.sqrt()),
        Cell::Bool(s.saturated || ab.saturated || ba.saturated),
        Cell::Num(window_error),
        oracle,
    ]);
    Ok(Outcome { table: t, failed: false, notes: Vec::new() })
}
