use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use boundary_cli::config::{default_dist_window, default_scan_window, WalkConfig};
use boundary_cli::{run, CliError, Command, Format, HeisMetric, LineSense, RunConfig, Window, EXIT_CONFIG, EXIT_FAILED};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "boundary", about = "Angle-metric experiments on lattices, nilpotent groups and random walks")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Write the table here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads (default: available parallelism). Output does not
    /// depend on it.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Read the whole run configuration from a TOML file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Print the normalized configuration as TOML and exit.
    #[arg(long, global = true)]
    dump_config: bool,
    #[command(subcommand)]
    cmd: Option<Cmd>,
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let v: Vec<f64> = s.split(',').map(|x| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}"))).collect::<Result<_, _>>()?;
    match v[..] {
        [a, b] => Ok((a, b)),
        _ => Err(format!("expected r_min,r_max, got {s:?}")),
    }
}

#[derive(Args)]
struct WindowArgs {
    /// Tail window as `r_min,r_max`.
    #[arg(long, value_parser = parse_pair)]
    window: Option<(f64, f64)>,
    /// Cap factor K of the candidate search.
    #[arg(long)]
    cap: Option<f64>,
}

impl WindowArgs {
    fn resolve(&self, default: Window) -> Window {
        let (r_min, r_max) = self.window.as_ref().map_or((default.r_min, default.r_max), |&w| w);
        Window { r_min, r_max, cap: self.cap.unwrap_or(default.cap) }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the suite of worked values with known answers.
    Verify {
        /// Only this suite: l1-exact, l1-estimate, l1-triangle, bch, lie-angles, gauge.
        #[arg(long)]
        suite: Option<String>,
    },
    /// Distance between two lattice lines or half-lines.
    Dist {
        /// `z<d>-l1`, `z<d>-l2` or `z<d>-sup`.
        #[arg(long)]
        space: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        a: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        b: Vec<i64>,
        #[arg(long, value_enum, default_value_t)]
        sense: LineSense,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Pairwise t̂ matrices between cyclic orbits in the Heisenberg group.
    Scan {
        /// Only `h3` is available.
        #[arg(long, default_value = "h3")]
        group: String,
        /// `standard5`, `horizontal16`, or `a,b,c` triples separated by `;`.
        #[arg(long, value_delimiter = ';', allow_hyphen_values = true, default_value = "standard5")]
        dirs: Vec<String>,
        #[arg(long, value_enum, default_value_t)]
        metric: HeisMetric,
        /// BFS table radius.
        #[arg(long, default_value_t = discrete_heisenberg::DEFAULT_RADIUS)]
        radius: u32,
        /// BFS table size limit in entries.
        #[arg(long, default_value_t = discrete_heisenberg::DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = 0.3)]
        theta: f64,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Random walks with drift and their distance to the drift direction.
    Walk {
        /// `z<d>` or `h3`.
        #[arg(long)]
        group: String,
        /// `l1`, `l2`, `sup` on lattices; `word-or-gauge` or `gauge` on h3.
        #[arg(long)]
        metric: Option<String>,
        /// Steps as coordinate lists separated by `;`.
        #[arg(long, value_delimiter = ';', allow_hyphen_values = true, required = true)]
        steps: Vec<String>,
        /// Probabilities like `1/2`, separated by `;`. Default: uniform.
        #[arg(long, value_delimiter = ';')]
        probs: Vec<String>,
        #[arg(long, default_value_t = 10_000)]
        length: usize,
        /// Seeds as `a..b` (inclusive) or a comma list.
        #[arg(long, default_value = "1..10")]
        seeds: String,
        /// Number of dyadic windows.
        #[arg(long, default_value_t = 4)]
        windows: usize,
        #[arg(long, default_value_t = 0.15)]
        threshold: f64,
    },
    /// Validate a Lie algebra file.
    LieCheck { path: PathBuf },
}

fn parse_seeds(s: &str) -> Result<Vec<u64>, CliError> {
    let bad = || CliError::Config(format!("bad seed list {s:?}"));
    if let Some((a, b)) = s.split_once("..") {
        let (a, b): (u64, u64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect()
}

fn command(cmd: Cmd) -> Result<Command, CliError> {
    Ok(match cmd {
        Cmd::Verify { suite } => Command::Verify { suite },
        Cmd::Dist { space, a, b, sense, window } => Command::Dist { space, a, b, sense, window: window.resolve(default_dist_window()) },
        Cmd::Scan { group, dirs, metric, radius, budget, theta, window } => {
            if group.trim().to_lowercase() != "h3" {
                return Err(CliError::Config(format!("scan supports only h3, not {group:?}")));
            }
            Command::Scan { directions: dirs, radius, budget, window: window.resolve(default_scan_window()), theta, metric }
        }
        Cmd::Walk { group, metric, steps, probs, length, seeds, windows, threshold } => Command::Walk(WalkConfig {
            group,
            metric,
            steps,
            probs,
            length,
            seeds: parse_seeds(&seeds)?,
            windows,
            threshold,
        }),
        Cmd::LieCheck { path } => Command::LieCheck { path },
    })
}

fn config(cli: Cli) -> Result<(RunConfig, bool), CliError> {
    let mut cfg = match (cli.config, cli.cmd) {
        (Some(_), Some(_)) => return Err(CliError::Config("--config replaces the subcommand; give one or the other".into())),
        (Some(path), None) => {
            let text = std::fs::read_to_string(&path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
            RunConfig::from_toml(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?
        }
        (None, Some(cmd)) => RunConfig::new(command(cmd)?),
        (None, None) => return Err(CliError::Config("no subcommand given; see --help".into())),
    };
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    if cli.output.is_some() {
        cfg.output = cli.output;
    }
    Ok((cfg.normalized()?, cli.dump_config))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: workers: {e}");
            return ExitCode::from(EXIT_CONFIG as u8);
        }
    }
    let (cfg, dump) = match config(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    if dump {
        print!("{}", cfg.to_toml());
        return ExitCode::SUCCESS;
    }
    let outcome = match run(&cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let text = match cfg.format {
        Format::Csv => outcome.table.to_csv(),
        Format::Json => outcome.table.to_json(),
    };
    let written = match &cfg.output {
        Some(p) => std::fs::write(p, &text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: writing output: {e}");
        return ExitCode::from(EXIT_FAILED as u8);
    }
    for n in &outcome.notes {
        eprintln!("{n}");
    }
    if outcome.failed {
        ExitCode::from(EXIT_FAILED as u8)
    } else {
        ExitCode::SUCCESS
    }
}
