//! The curated suite of worked values with known answers.

use cone_metric::{s_estimate, weak_triangle_values, TailWindow};
use euclidean::{l1_ray_s_exact, Exact, Lattice, LatticeDirection, Metric, Sense};
use nilpotent_lie::{bch_product, gauge_suite, h3, rat, rescale_norms, s_plus_additive_exact, LieVector, Root, Span, BUNDLED};

use crate::table::{Cell, Table};
use crate::Outcome;

pub const SUITES: [&str; 6] = ["l1-exact", "l1-estimate", "l1-triangle", "bch", "lie-angles", "gauge"];

/// Samples per property in the gauge suite.
const GAUGE_SAMPLES: usize = 1000;
const GAUGE_SEED: u64 = 3;

const L1: [[i64; 2]; 3] = [[1, 0], [2, 1], [1, 1]];

struct Rows {
    table: Table,
    failed: bool,
}

impl Rows {
    fn add(&mut self, suite: &str, check: &str, expected: Cell, computed: Cell, tolerance: Cell, ok: bool) {
        self.failed |= !ok;
        let status = Cell::text(if ok { "PASS" } else { "FAIL" });
        self.table.push(vec![Cell::text(suite), Cell::text(check), expected, computed, tolerance, status]);
    }

    fn error(&mut self, suite: &str, check: &str, e: impl std::fmt::Display) {
        self.failed = true;
        self.table.push(vec![
            Cell::text(suite),
            Cell::text(check),
            Cell::Empty,
            Cell::text(e.to_string()),
            Cell::Empty,
            Cell::text("ERROR"),
        ]);
    }
}

fn exact_f64(e: &Exact) -> f64 {
    *e.numer() as f64 / *e.denom() as f64
}

fn pair_name(i: usize, j: usize) -> String {
    format!("s(L{},L{})", i + 1, j + 1)
}

fn expected_l1(i: usize, j: usize) -> Exact {
    match (i, j) {
        (0, 1) => Exact::new(1, 2),
        (1, 2) => Exact::new(1, 3),
        _ => Exact::from(1),
    }
}

const PAIRS: [(usize, usize); 3] = [(0, 1), (1, 2), (0, 2)];

fn l1_exact(rows: &mut Rows) {
    for (i, j) in PAIRS {
        let want = expected_l1(i, j);
        match l1_ray_s_exact(&L1[i], &L1[j], Sense::Line) {
            Ok(got) => rows.add("l1-exact", &pair_name(i, j), Cell::text(want.to_string()), Cell::text(got.to_string()), Cell::Int(0), got == want),
            Err(e) => rows.error("l1-exact", &pair_name(i, j), e),
        }
    }
}

fn l1_estimate(rows: &mut Rows) {
    let sp = Lattice::new(2, Metric::L1);
    let w = TailWindow::new(100.0, 1000.0, 10.0).expect("valid window");
    let lines: Vec<_> = L1.iter().map(|v| LatticeDirection::line(v.to_vec()).expect("nonzero").orbit()).collect();
    for (i, j) in PAIRS {
        let want = exact_f64(&expected_l1(i, j));
        match s_estimate(&sp, &lines[i], &lines[j], &w) {
            Ok(e) => rows.add("l1-estimate", &pair_name(i, j), Cell::Num(want), Cell::Num(e.value), Cell::Num(0.02), (e.value - want).abs() <= 0.02),
            Err(e) => rows.error("l1-estimate", &pair_name(i, j), e),
        }
    }
}

fn l1_triangle(rows: &mut Rows) {
    let v = |i, j| exact_f64(&expected_l1(i, j));
    let (s12, s23, s13) = (v(0, 1), v(1, 2), v(0, 2));
    let r = weak_triangle_values(s12, s23, s13, 1e-12);
    // The plain inequality must fail: 1 > 1/2 + 1/3.
    rows.add("l1-triangle", "s-triangle violated", Cell::Bool(true), Cell::Bool(!r.plain), Cell::Empty, !r.plain);
    rows.add("l1-triangle", "weak s-triangle", Cell::Bool(true), Cell::Bool(r.weak), Cell::Empty, r.weak);
    rows.add("l1-triangle", "t-triangle", Cell::Bool(true), Cell::Bool(r.t), Cell::Empty, r.t);
}

fn show(v: &LieVector) -> String {
    let parts: Vec<String> = v.coords.iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join(","))
}

fn bch(rows: &mut Rows) {
    let h = h3();
    let want = LieVector { coords: vec![rat(1, 1), rat(1, 1), rat(1, 2)] };
    match bch_product(&h, &h.e(0), &h.e(1)) {
        Ok(got) => rows.add("bch", "h3 e1*e2", Cell::text(show(&want)), Cell::text(show(&got)), Cell::Int(0), got == want),
        Err(e) => rows.error("bch", "h3 e1*e2", e),
    }
}

fn lie_angles(rows: &mut Rows) {
    let h = h3();
    let cases = [
        ("h3 s+(e1, e1+e3)", h.e(0), &h.e(0) + &h.e(2), Root::zero()),
        ("h3 s+(e1, e3)", h.e(0), h.e(2), Root::rational(rat(1, 1))),
    ];
    for (name, x, y, want) in cases {
        match s_plus_additive_exact(&h, &x, &y, Span::Positive) {
            Ok(got) => rows.add("lie-angles", name, Cell::text(want.to_string()), Cell::text(got.to_string()), Cell::Int(0), got == want),
            Err(e) => rows.error("lie-angles", name, e),
        }
    }
}

fn gauge(rows: &mut Rows) {
    for name in BUNDLED {
        let alg = nilpotent_lie::bundled(name).expect("bundled algebra");
        let rescaled = match rescale_norms(&alg, 1.0) {
            Ok(r) => r,
            Err(e) => {
                rows.error("gauge", &format!("{name} rescale"), e);
                continue;
            }
        };
        match gauge_suite(&alg, &rescaled.gauge, GAUGE_SAMPLES, GAUGE_SEED) {
            Ok(props) => {
                for p in props {
                    let check = format!("{name} {}", p.name);
                    let computed = format!("{}/{} failed", p.failures, p.instances);
                    rows.add("gauge", &check, Cell::text(format!("0/{} failed", p.instances)), Cell::text(computed), Cell::Num(1e-12), p.passed());
                }
            }
            Err(e) => rows.error("gauge", name, e),
        }
    }
}

/// Run the named suite, or all of them. A name matching no suite yields
/// an empty table, which is not a failure.
pub fn run(filter: Option<&str>) -> Outcome {
    let mut rows = Rows { table: Table::new(&["suite", "check", "expected", "computed", "tolerance", "status"]), failed: false };
    let runners: [(&str, fn(&mut Rows)); 6] = [
        ("l1-exact", l1_exact),
        ("l1-estimate", l1_estimate),
        ("l1-triangle", l1_triangle),
        ("bch", bch),
        ("lie-angles", lie_angles),
        ("gauge", gauge),
    ];
    for (name, f) in runners {
        if filter.is_none_or(|s| s == name) {
            f(&mut rows);
        }
    }
    let n = rows.table.rows.len();
    let bad = rows.table.rows.iter().filter(|r| r[5] != Cell::text("PASS")).count();
    Outcome { notes: vec![format!("{n} checks, {bad} failed")], table: rows.table, failed: rows.failed }
}
