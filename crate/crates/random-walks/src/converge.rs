use cone_metric::{s_estimate, TailWindow};
use metric_core::CyclicOrbit;
use rayon::prelude::*;

use crate::drift::{drift_element, DriftSpec, StepDistribution};
use crate::layered::Layered;
use crate::walk::{simulate, Trajectory, RNG_ALGORITHM};
use crate::WalkError;

#[derive(Debug, Clone, PartialEq)]
pub struct WindowRow {
    pub window: TailWindow,
    /// `ŝ(trajectory, ⟨g⟩⁺)` on the window.
    pub value: f64,
    pub saturated: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub seed: u64,
    pub algorithm: &'static str,
    pub rows: Vec<WindowRow>,
    /// Trajectory points whose norm used a fallback metric.
    pub fallback_points: usize,
    pub threshold: f64,
}

impl ConvergenceReport {
    pub fn values(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.value).collect()
    }

    /// Strictly by value, with no allowance for sampling noise.
    pub fn nonincreasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].value <= w[0].value)
    }

    /// Each step may rise by at most the larger noise level of the two
    /// windows involved. `noise` is per window, as from [`window_noise`].
    pub fn nonincreasing_within(&self, noise: &[f64]) -> bool {
        assert_eq!(noise.len(), self.rows.len());
        self.rows.windows(2).enumerate().all(|(j, w)| w[1].value <= w[0].value + noise[j].max(noise[j + 1]))
    }

    pub fn ends_below(&self) -> bool {
        self.rows.last().is_some_and(|r| r.value <= self.threshold)
    }

    pub fn passes(&self, noise: &[f64]) -> bool {
        self.nonincreasing_within(noise) && self.ends_below()
    }
}

/// Per-window sample standard deviation of `ŝ` across seeds. Reports must
/// share their window count; fewer than two reports give zero noise.
pub fn window_noise(reports: &[ConvergenceReport]) -> Vec<f64> {
    let Some(first) = reports.first() else { return Vec::new() };
    let n = reports.len() as f64;
    (0..first.rows.len())
        .map(|j| {
            if reports.len() < 2 {
                return 0.0;
            }
            let mean = reports.iter().map(|r| r.rows[j].value).sum::<f64>() / n;
            let var = reports.iter().map(|r| (r.rows[j].value - mean).powi(2)).sum::<f64>() / (n - 1.0);
            var.sqrt()
        })
        .collect()
}

/// Dyadic windows `[R/2^{j+1}, R/2^j]` for `j = count..1`, cap 2, so that
/// candidate searches stay inside `reach = R`.
pub fn default_windows(reach: f64, count: usize) -> Vec<TailWindow> {
    (1..=count)
        .rev()
        .filter_map(|j| {
            let hi = reach / 2f64.powi(j as i32);
            TailWindow::new(hi / 2.0, hi, 2.0).ok()
        })
        .collect()
}

/// `ŝ` between the trajectory and `⟨g⟩⁺` on each window.
pub fn convergence_check<S: Layered>(
    space: &S,
    traj: &Trajectory<S::Point>,
    spec: &DriftSpec<S::Point>,
    windows: &[TailWindow],
    threshold: f64,
) -> Result<ConvergenceReport, WalkError> {
    if let Some(w) = windows.iter().find(|w| w.cap * w.r_max > traj.reach()) {
        return Err(WalkError::TooShort(format!("window up to {} needs reach {}, have {}", w.r_max, w.cap * w.r_max, traj.reach())));
    }
    let target = CyclicOrbit::semigroup(spec.representative.clone());
    let rows = windows
        .iter()
        .map(|w| {
            let e = s_estimate(space, traj, &target, w)?;
            Ok(WindowRow { window: *w, value: e.value, saturated: e.saturated })
        })
        .collect::<Result<_, WalkError>>()?;
    Ok(ConvergenceReport {
        seed: traj.seed,
        algorithm: RNG_ALGORITHM,
        rows,
        fallback_points: traj.fallback_count(),
        threshold,
    })
}

/// Simulate and check one walk per seed, in parallel. Reports come back in
/// seed order.
pub fn run_seeds<S: Layered>(
    space: &S,
    dist: &StepDistribution<S::Point>,
    len: usize,
    seeds: &[u64],
    window_count: usize,
    threshold: f64,
) -> Result<Vec<ConvergenceReport>, WalkError>
where
    S::Point: Send + Sync,
{
    let spec = drift_element(space, dist)?;
    seeds
        .par_iter()
        .map(|&seed| {
            let traj = simulate(space, dist, len, seed)?;
            convergence_check(space, &traj, &spec, &default_windows(traj.reach(), window_count), threshold)
        })
        .collect()
}
