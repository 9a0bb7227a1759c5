use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use discrete_heisenberg::{
    boundary_scan, horizontal_spearman, GeneratingSet, HeisError, HeisenbergSpace, LieGauge, ScanOptions, TMatrix,
    WordMetricTable, H,
};

use crate::config::{HeisMetric, Window};
use crate::table::{Cell, Table};
use crate::{CliError, Outcome};

/// Directory for persisted BFS tables.
pub const CACHE_ENV: &str = "BOUNDARY_CACHE_DIR";

fn heis_err(e: HeisError) -> CliError {
    match e {
        HeisError::MemoryBudgetExceeded { .. } | HeisError::RadiusTooLarge(_) => CliError::Budget(e.to_string()),
        e => CliError::Run(e.to_string()),
    }
}

fn cache_path(radius: u32) -> Option<PathBuf> {
    let dir = std::env::var_os(CACHE_ENV)?;
    Some(PathBuf::from(dir).join(format!("h3-standard-r{radius}.bfs")))
}

/// The standard-generator table, from the cache when a valid blob is there.
/// A missing or stale blob is rebuilt and rewritten; cache write failures
/// are reported as notes, not errors.
pub fn standard_table(radius: u32, budget: u64, notes: &mut Vec<String>) -> Result<WordMetricTable, CliError> {
    let gens = GeneratingSet::standard();
    let path = cache_path(radius);
    if let Some(p) = &path {
        if let Ok(f) = std::fs::File::open(p) {
            match WordMetricTable::read_from(std::io::BufReader::new(f), &gens, radius) {
                Ok(t) => return Ok(t),
                Err(e) => notes.push(format!("ignoring cached table {}: {e}", p.display())),
            }
        }
    }
    let t = WordMetricTable::build(gens, radius, budget).map_err(heis_err)?;
    if let Some(p) = &path {
        let write = || -> std::io::Result<()> {
            if let Some(d) = p.parent() {
                std::fs::create_dir_all(d)?;
            }
            let tmp = p.with_extension("tmp");
            let mut w = std::io::BufWriter::new(std::fs::File::create(&tmp)?);
            t.write_to(&mut w)?;
            drop(w);
            std::fs::rename(&tmp, p)
        };
        if let Err(e) = write() {
            notes.push(format!("could not cache table at {}: {e}", p.display()));
        }
    }
    Ok(t)
}

fn matrix_rows(t: &mut Table, kind: &str, labels: &[String], m: &TMatrix, comps: &[Vec<usize>]) {
    for (i, label) in labels.iter().enumerate() {
        let comp = comps.iter().position(|c| c.contains(&i)).expect("every index is in a component");
        let mut row = vec![Cell::text(kind), Cell::text(label)];
        row.extend(m.values[i].iter().map(|&v| Cell::Num(v)));
        row.push(Cell::text(m.flags[i].iter().map(|f| f.code()).collect::<String>()));
        row.push(Cell::Int(comp as i64));
        t.push(row);
    }
}

/// `t̂` matrices between cyclic semigroups (`linear`) and subgroups
/// (`projective`) of the given directions in `H₃(ℤ)`.
///
/// Cells are `t̂` values; `flags` has one code per column: `.` ok, `S`
/// saturated, `H` beyond the word-length horizon (value NaN).
pub fn run(dirs: &[String], radius: u32, budget: u64, window: &Window, theta: f64, metric: HeisMetric) -> Result<Outcome, CliError> {
    let dirs: Vec<H> = dirs.iter().map(|d| H::from_str(d)).collect::<Result<_, _>>().map_err(|e| CliError::Config(e.to_string()))?;
    let mut notes = Vec::new();
    let space = match metric {
        HeisMetric::Gauge => HeisenbergSpace::gauge(LieGauge::default()),
        HeisMetric::Word => HeisenbergSpace::word(Arc::new(standard_table(radius, budget, &mut notes)?)),
        HeisMetric::WordOrGauge => {
            HeisenbergSpace::word_or_gauge(Arc::new(standard_table(radius, budget, &mut notes)?), LieGauge::default())
        }
    };
    let opts = ScanOptions { window: window.tail()?, theta };
    let r = boundary_scan(&space, &dirs, &opts).map_err(heis_err)?;
    let labels = r.labels();
    let mut cols = vec!["matrix".to_string(), "direction".to_string()];
    cols.extend(labels.iter().cloned());
    cols.push("flags".into());
    cols.push("component".into());
    let mut t = Table { columns: cols, rows: Vec::new() };
    matrix_rows(&mut t, "linear", &labels, &r.linear, &r.components);
    matrix_rows(&mut t, "projective", &labels, &r.projective, &r.projective_components);
    notes.push(format!("linear: {} components; projective: {} components", r.components.len(), r.projective_components.len()));
    if let Some(rho) = horizontal_spearman(&r) {
        notes.push(format!("horizontal Spearman against the abelianized angle: {rho:.4}"));
    }
    Ok(Outcome { table: t, failed: false, notes })
}
