use std::path::Path;

use nilpotent_lie::{bound_constants, load_algebra, rescale_norms, LieError};

use crate::table::{Cell, Table};
use crate::{CliError, Outcome};

/// Validate an algebra file: structure constants, then the rescaled gauge
/// and its constants. A structural violation names the offending triple
/// and fails the run.
pub fn run(path: &Path) -> Result<Outcome, CliError> {
    let mut t = Table::new(&["check", "status", "detail"]);
    let alg = match load_algebra(path) {
        Ok(a) => a,
        Err(LieError::Config(m)) => return Err(CliError::Config(m)),
        Err(e) => {
            let check = match &e {
                LieError::Jacobi(_) => "jacobi",
                LieError::Antisymmetry(_) => "antisymmetry",
                LieError::Grading(_) => "grading",
                LieError::Generation { .. } => "generation",
                _ => "structure",
            };
            t.push(vec![Cell::text(check), Cell::text("FAIL"), Cell::text(e.to_string())]);
            return Ok(Outcome { table: t, failed: true, notes: vec![format!("{}: {e}", path.display())] });
        }
    };
    t.push(vec![
        Cell::text("structure"),
        Cell::text("PASS"),
        Cell::text(format!("{}: dim {}, layers {:?}, class {}", alg.name(), alg.dim(), alg.layers(), alg.class())),
    ]);
    let mut failed = false;
    match rescale_norms(&alg, 1.0) {
        Ok(r) => {
            let k = bound_constants(&alg, &r.gauge);
            t.push(vec![
                Cell::text("rescaled triangle"),
                Cell::text("PASS"),
                Cell::text(format!("step {}, scales {:?}, slack {}", r.step, r.gauge.scales_f64(), r.min_slack)),
            ]);
            t.push(vec![Cell::text("constants"), Cell::text("PASS"), Cell::text(format!("M = {}, Q = {}", k.m, k.q))]);
        }
        Err(e) => {
            failed = true;
            t.push(vec![Cell::text("rescaled triangle"), Cell::text("FAIL"), Cell::text(e.to_string())]);
        }
    }
    Ok(Outcome { table: t, failed, notes: Vec::new() })
}
