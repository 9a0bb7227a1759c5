use std::str::FromStr;
use std::sync::Arc;

use discrete_heisenberg::{HeisenbergSpace, LieGauge, H};
use euclidean::Lattice;
use num_rational::Rational64;
use random_walks::{drift_element, run_seeds, window_noise, Layered, StepDistribution, WalkError, RNG_ALGORITHM};

use crate::commands::scan::standard_table;
use crate::config::{parse_coords, parse_metric, WalkConfig};
use crate::table::{Cell, Table};
use crate::{CliError, Outcome};

fn walk_err(e: WalkError) -> CliError {
    match e {
        WalkError::NoDrift(_) | WalkError::InvalidDistribution(_) | WalkError::EmptyWalk | WalkError::TooShort(_) => {
            CliError::Config(e.to_string())
        }
        e => CliError::Run(e.to_string()),
    }
}

fn probs(w: &WalkConfig) -> Result<Vec<Rational64>, CliError> {
    w.probs.iter().map(|p| Rational64::from_str(p).map_err(|_| CliError::Config(format!("bad probability {p:?}")))).collect()
}

fn run_on<S: Layered>(space: &S, dist: StepDistribution<S::Point>, w: &WalkConfig, mut notes: Vec<String>) -> Result<Outcome, CliError>
where
    S::Point: std::fmt::Debug,
{
    let spec = drift_element(space, &dist).map_err(walk_err)?;
    notes.push(format!(
        "drift layer {}, expectation {:?}, representative {:?} (scaled by {})",
        spec.layer,
        spec.drift.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        spec.representative,
        spec.scaling
    ));
    let reps = run_seeds(space, &dist, w.length, &w.seeds, w.windows, w.threshold).map_err(walk_err)?;
    let noise = window_noise(&reps);
    let mut t = Table::new(&[
        "seed", "rng", "window_lo", "window_hi", "cap", "s_hat", "saturated", "noise", "nonincreasing", "ends_below", "fallback_points",
    ]);
    for r in &reps {
        let mono = r.nonincreasing_within(&noise);
        for (row, n) in r.rows.iter().zip(&noise) {
            t.push(vec![
                Cell::Int(r.seed as i64),
                Cell::text(r.algorithm),
                Cell::Num(row.window.r_min),
                Cell::Num(row.window.r_max),
                Cell::Num(row.window.cap),
                Cell::Num(row.value),
                Cell::Bool(row.saturated),
                Cell::Num(*n),
                Cell::Bool(mono),
                Cell::Bool(r.ends_below()),
                Cell::Int(r.fallback_points as i64),
            ]);
        }
    }
    let within = reps.iter().filter(|r| r.passes(&noise)).count();
    let strict = reps.iter().filter(|r| r.nonincreasing() && r.ends_below()).count();
    notes.push(format!(
        "{within}/{} seeds nonincreasing within noise and ≤ {}; {strict} strictly; rng {RNG_ALGORITHM}",
        reps.len(),
        w.threshold
    ));
    Ok(Outcome { table: t, failed: false, notes })
}

/// Simulate one walk per seed and report `ŝ(trajectory, ⟨g⟩⁺)` per window.
/// Expects a normalized config.
pub fn run(w: &WalkConfig) -> Result<Outcome, CliError> {
    let p = probs(w)?;
    let steps: Vec<Vec<i64>> = w.steps.iter().map(|s| parse_coords(s)).collect::<Result<_, _>>()?;
    let metric = w.metric.as_deref().unwrap_or_default();
    if w.group == "h3" {
        let mut notes = Vec::new();
        let space = match metric {
            "gauge" => HeisenbergSpace::gauge(LieGauge::default()),
            _ => HeisenbergSpace::word_or_gauge(
                Arc::new(standard_table(discrete_heisenberg::DEFAULT_RADIUS, discrete_heisenberg::DEFAULT_BUDGET, &mut notes)?),
                LieGauge::default(),
            ),
        };
        let support = steps.iter().map(|v| H::new(v[0], v[1], v[2])).collect();
        let dist = StepDistribution::new(support, p).map_err(walk_err)?;
        run_on(&space, dist, w, notes)
    } else {
        let m = parse_metric(metric).ok_or_else(|| CliError::Config(format!("unknown metric {metric:?}")))?;
        let space = Lattice::new(steps[0].len(), m);
        let dist = StepDistribution::new(steps, p).map_err(walk_err)?;
        run_on(&space, dist, w, Vec::new())
    }
}
