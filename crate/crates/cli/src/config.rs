use std::path::PathBuf;
use std::str::FromStr;

use cone_metric::TailWindow;
use discrete_heisenberg::{horizontal_directions, standard_directions, H};
use euclidean::Metric;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum LineSense {
    #[default]
    Line,
    HalfLine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum HeisMetric {
    #[default]
    Word,
    Gauge,
    WordOrGauge,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Window {
    pub r_min: f64,
    pub r_max: f64,
    pub cap: f64,
}

impl Window {
    pub fn tail(&self) -> Result<TailWindow, CliError> {
        TailWindow::new(self.r_min, self.r_max, self.cap).map_err(|e| CliError::Config(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WalkConfig {
    /// `z1`, `z2`, … or `h3`.
    pub group: String,
    /// `l1`, `l2` or `sup` on lattices; `word-or-gauge` or `gauge` on `h3`.
    #[serde(default)]
    pub metric: Option<String>,
    /// Comma-separated coordinates, one step per entry.
    pub steps: Vec<String>,
    /// Fractions like `1/2`; empty means uniform.
    #[serde(default)]
    pub probs: Vec<String>,
    #[serde(default = "default_length")]
    pub length: usize,
    #[serde(default = "default_seeds")]
    pub seeds: Vec<u64>,
    #[serde(default = "default_window_count")]
    pub windows: usize,
    #[serde(default = "default_threshold")]
    pub threshold: f64,
}

fn default_length() -> usize {
    10_000
}
fn default_seeds() -> Vec<u64> {
    (1..=10).collect()
}
fn default_window_count() -> usize {
    4
}
fn default_threshold() -> f64 {
    0.15
}
fn default_radius() -> u32 {
    discrete_heisenberg::DEFAULT_RADIUS
}
fn default_budget() -> u64 {
    discrete_heisenberg::DEFAULT_BUDGET
}
fn default_theta() -> f64 {
    0.3
}
pub fn default_dist_window() -> Window {
    Window { r_min: 100.0, r_max: 1000.0, cap: 10.0 }
}
pub fn default_scan_window() -> Window {
    Window { r_min: 8.0, r_max: 20.0, cap: 2.0 }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Command {
    Verify {
        #[serde(default)]
        suite: Option<String>,
    },
    Dist {
        space: String,
        a: Vec<i64>,
        b: Vec<i64>,
        #[serde(default)]
        sense: LineSense,
        #[serde(default = "default_dist_window")]
        window: Window,
    },
    Scan {
        /// Preset names (`standard5`, `horizontal16`) or `a,b,c` triples.
        directions: Vec<String>,
        #[serde(default = "default_radius")]
        radius: u32,
        #[serde(default = "default_budget")]
        budget: u64,
        #[serde(default = "default_scan_window")]
        window: Window,
        #[serde(default = "default_theta")]
        theta: f64,
        #[serde(default)]
        metric: HeisMetric,
    },
    Walk(WalkConfig),
    LieCheck {
        path: PathBuf,
    },
}

/// Everything one run depends on. Worker count is deliberately absent:
/// output does not depend on it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub format: Format,
    #[serde(default)]
    pub output: Option<PathBuf>,
    pub command: Command,
}

/// `z<d>-<metric>`.
pub fn parse_lattice_space(s: &str) -> Result<(usize, Metric), CliError> {
    let bad = || CliError::Config(format!("unknown space {s:?}; expected z<d>-l1, z<d>-l2 or z<d>-sup"));
    let (d, m) = s.strip_prefix('z').and_then(|r| r.split_once('-')).ok_or_else(bad)?;
    let dim: usize = d.parse().map_err(|_| bad())?;
    if dim == 0 {
        return Err(bad());
    }
    Ok((dim, parse_metric(m).ok_or_else(bad)?))
}

pub fn parse_metric(m: &str) -> Option<Metric> {
    match m {
        "l1" => Some(Metric::L1),
        "l2" => Some(Metric::L2),
        "sup" => Some(Metric::Sup),
        _ => None,
    }
}

/// Comma-separated integers, optionally in parentheses.
pub fn parse_coords(s: &str) -> Result<Vec<i64>, CliError> {
    let t = s.trim().trim_start_matches('(').trim_end_matches(')');
    t.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| CliError::Config(format!("bad coordinate list {s:?}"))))
        .collect()
}

fn coords_string(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Expand presets and canonicalize `a,b,c` triples; duplicates after the
/// first occurrence are dropped, order is kept.
pub fn expand_directions(items: &[String]) -> Result<Vec<H>, CliError> {
    let mut out: Vec<H> = Vec::new();
    for item in items {
        let batch = match item.trim() {
            "standard5" => standard_directions(),
            "horizontal16" => horizontal_directions(),
            t => vec![H::from_str(t).map_err(|_| CliError::Config(format!("bad direction {item:?}")))?],
        };
        for g in batch {
            if g == H::IDENTITY {
                return Err(CliError::Config("the identity is not a direction".into()));
            }
            if !out.contains(&g) {
                out.push(g);
            }
        }
    }
    if out.is_empty() {
        return Err(CliError::Config("no directions".into()));
    }
    Ok(out)
}

fn check_window(w: &Window) -> Result<(), CliError> {
    w.tail().map(|_| ())
}

/// Step dimension of a walk group, and its canonical metric name.
fn walk_group(group: &str, metric: Option<&str>) -> Result<(usize, String), CliError> {
    if group == "h3" {
        let m = metric.unwrap_or("word-or-gauge");
        if m != "word-or-gauge" && m != "gauge" {
            return Err(CliError::Config(format!("metric {m:?} is not available on h3")));
        }
        return Ok((3, m.to_string()));
    }
    let dim: usize = group
        .strip_prefix('z')
        .and_then(|d| d.parse().ok())
        .filter(|&d| d > 0)
        .ok_or_else(|| CliError::Config(format!("unknown group {group:?}; expected z<d> or h3")))?;
    let m = metric.unwrap_or("l1");
    parse_metric(m).ok_or_else(|| CliError::Config(format!("metric {m:?} is not available on {group}")))?;
    Ok((dim, m.to_string()))
}

fn normalize_walk(w: &WalkConfig) -> Result<WalkConfig, CliError> {
    let group = w.group.trim().to_lowercase();
    let (dim, metric) = walk_group(&group, w.metric.as_deref().map(str::trim))?;
    if w.steps.is_empty() {
        return Err(CliError::Config("a walk needs at least one step".into()));
    }
    let probs: Vec<Rational64> = if w.probs.is_empty() {
        vec![Rational64::new(1, w.steps.len() as i64); w.steps.len()]
    } else {
        if w.probs.len() != w.steps.len() {
            return Err(CliError::Config(format!("{} steps but {} probabilities", w.steps.len(), w.probs.len())));
        }
        w.probs
            .iter()
            .map(|p| Rational64::from_str(p.trim()).map_err(|_| CliError::Config(format!("bad probability {p:?}"))))
            .collect::<Result<_, _>>()?
    };
    let mut merged: Vec<(Vec<i64>, Rational64)> = Vec::new();
    for (s, p) in w.steps.iter().zip(probs) {
        let v = parse_coords(s)?;
        if v.len() != dim {
            return Err(CliError::Config(format!("step {s:?} has {} coordinates, {group} needs {dim}", v.len())));
        }
        match merged.iter_mut().find(|(u, _)| *u == v) {
            Some((_, q)) => *q += p,
            None => merged.push((v, p)),
        }
    }
    merged.sort();
    if merged.iter().any(|(_, p)| *p <= Rational64::new(0, 1)) || merged.iter().map(|(_, p)| *p).sum::<Rational64>() != Rational64::new(1, 1) {
        return Err(CliError::Config("probabilities must be positive and sum to 1".into()));
    }
    let mut seeds = w.seeds.clone();
    seeds.sort_unstable();
    seeds.dedup();
    if seeds.is_empty() || w.length == 0 || w.windows == 0 || !(w.threshold > 0.0 && w.threshold <= 1.0) {
        return Err(CliError::Config("walk needs seeds, length ≥ 1, windows ≥ 1 and threshold in (0, 1]".into()));
    }
    Ok(WalkConfig {
        group,
        metric: Some(metric),
        steps: merged.iter().map(|(v, _)| coords_string(v)).collect(),
        probs: merged.iter().map(|(_, p)| p.to_string()).collect(),
        length: w.length,
        seeds,
        windows: w.windows,
        threshold: w.threshold,
    })
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig { format: Format::Csv, output: None, command }
    }

    /// Validated canonical form. Normalizing twice gives the same value,
    /// and the TOML of a normalized config parses back to itself.
    pub fn normalized(&self) -> Result<RunConfig, CliError> {
        let command = match &self.command {
            Command::Verify { suite } => Command::Verify {
                suite: suite.as_ref().map(|s| s.trim().to_lowercase()).filter(|s| !s.is_empty()),
            },
            Command::Dist { space, a, b, sense, window } => {
                let space = space.trim().to_lowercase();
                let (dim, _) = parse_lattice_space(&space)?;
                for v in [a, b] {
                    if v.len() != dim || v.iter().all(|&x| x == 0) {
                        return Err(CliError::Config(format!("direction {v:?} must be a nonzero vector of length {dim}")));
                    }
                }
                check_window(window)?;
                Command::Dist { space, a: a.clone(), b: b.clone(), sense: *sense, window: *window }
            }
            Command::Scan { directions, radius, budget, window, theta, metric } => {
                let dirs = expand_directions(directions)?;
                check_window(window)?;
                if !(*theta > 0.0 && *theta < 1.0) {
                    return Err(CliError::Config(format!("theta {theta} must lie in (0, 1)")));
                }
                if *radius == 0 || *radius > 254 {
                    return Err(CliError::Config(format!("radius {radius} must lie in 1..=254")));
                }
                Command::Scan {
                    directions: dirs.iter().map(|g| g.to_string()).collect(),
                    radius: *radius,
                    budget: *budget,
                    window: *window,
                    theta: *theta,
                    metric: *metric,
                }
            }
            Command::Walk(w) => Command::Walk(normalize_walk(w)?),
            Command::LieCheck { path } => Command::LieCheck { path: path.clone() },
        };
        Ok(RunConfig { format: self.format, output: self.output.clone(), command })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// Parse errors carry line and column.
    pub fn from_toml(text: &str) -> Result<RunConfig, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }
}
