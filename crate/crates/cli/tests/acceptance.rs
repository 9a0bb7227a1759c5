//! One PASS/FAIL line per acceptance criterion, with timings.
//!
//! The process exits 0 once every line is printed. Set
//! `ACCEPTANCE_STRICT=1` to exit 1 when any criterion fails.

use std::process::Command;
use std::sync::{Arc, OnceLock};
use std::time::{Duration, Instant};

use cone_metric::{pushforward, s_estimate, s_plus_estimate, weak_triangle_values, QuasiIsometry, TailWindow};
use discrete_heisenberg::{
    boundary_scan, horizontal_directions, horizontal_spearman, standard_directions, HeisenbergSpace, LieGauge,
    ScanOptions, WordMetricTable, H,
};
use euclidean::{l2_line_s_exact, Lattice, LatticeDirection, Metric, Sense};
use metric_core::{CyclicOrbit, GroupSpace, OrbitSense};
use nilpotent_lie::{
    bch_product, bound_constants, bundled, gauge_suite, growth_bounds_check, inverse, random_from_layer,
    rescale_norms, s_plus_additive_exact, s_plus_mult_estimate, triangle_violation, BoundParams, GradedLieAlgebra,
    GrowthBound, LieVector, Span, BUNDLED,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use random_walks::{drift_element, run_seeds, window_noise, StepDistribution, WalkError};

type Check = Result<String, String>;

struct Criterion {
    number: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Check,
}

fn table() -> Arc<WordMetricTable> {
    static T: OnceLock<Arc<WordMetricTable>> = OnceLock::new();
    T.get_or_init(|| Arc::new(WordMetricTable::standard(22).expect("radius-22 table fits the default budget"))).clone()
}

fn boundary(args: &[&str]) -> Result<Vec<u8>, String> {
    let o = Command::new(env!("CARGO_BIN_EXE_boundary")).args(args).output().map_err(|e| e.to_string())?;
    if !o.status.success() {
        return Err(format!("`boundary {}` exited {:?}: {}", args.join(" "), o.status.code(), String::from_utf8_lossy(&o.stderr)));
    }
    Ok(o.stdout)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_direction(rng: &mut ChaCha8Rng, bound: i64) -> Vec<i64> {
    loop {
        let v = vec![rng.random_range(-bound..=bound), rng.random_range(-bound..=bound)];
        if v != [0, 0] {
            return v;
        }
    }
}

fn lattice_window() -> TailWindow {
    TailWindow::new(100.0, 1000.0, 10.0).expect("valid window")
}

fn l1_values() -> Check {
    let out = boundary(&["verify"])?;
    let mut r = csv::Reader::from_reader(out.as_slice());
    let rows: Vec<csv::StringRecord> = r.records().collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    let mut detail = Vec::new();
    for suite in ["l1-exact", "l1-estimate"] {
        let mine: Vec<_> = rows.iter().filter(|r| &r[0] == suite).collect();
        ensure(mine.len() == 3, || format!("{suite}: {} rows", mine.len()))?;
        for row in mine {
            ensure(&row[5] == "PASS", || format!("{suite} {}: {} vs {}", &row[1], &row[2], &row[3]))?;
            detail.push(format!("{} {}={}", suite, &row[1], &row[3]));
        }
    }
    // The exact column is checked against the known values directly.
    let want = [("s(L1,L2)", "1/2"), ("s(L2,L3)", "1/3"), ("s(L1,L3)", "1")];
    for (check, value) in want {
        let row = rows.iter().find(|r| &r[0] == "l1-exact" && &r[1] == check).ok_or(format!("missing {check}"))?;
        ensure(&row[3] == value, || format!("{check} = {}, not {value}", &row[3]))?;
    }
    Ok(detail.join("; "))
}

fn l2_closed_form() -> Check {
    let sp = Lattice::new(2, Metric::L2);
    let w = lattice_window();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for k in 0..100 {
        let sense = if k % 2 == 0 { Sense::HalfLine } else { Sense::Line };
        let (x, y) = (random_direction(&mut rng, 8), random_direction(&mut rng, 8));
        let exact = l2_line_s_exact(&x, &y, sense).map_err(|e| e.to_string())?;
        let ox = LatticeDirection::new(x.clone(), sense).map_err(|e| e.to_string())?.orbit();
        let oy = LatticeDirection::new(y.clone(), sense).map_err(|e| e.to_string())?.orbit();
        let est = s_estimate(&sp, &ox, &oy, &w).map_err(|e| e.to_string())?.value;
        worst = worst.max((est - exact).abs());
        ensure((est - exact).abs() <= 0.02, || format!("{x:?} {y:?} {sense:?}: {est} vs {exact}"))?;
    }
    let mut excess = f64::NEG_INFINITY;
    for _ in 0..200 {
        let d: Vec<Vec<i64>> = (0..3).map(|_| random_direction(&mut rng, 8)).collect();
        let t = |a: &[i64], b: &[i64]| l2_line_s_exact(a, b, Sense::HalfLine).map(f64::sqrt).map_err(|e| e.to_string());
        let (ab, bc, ac) = (t(&d[0], &d[1])?, t(&d[1], &d[2])?, t(&d[0], &d[2])?);
        for (long, a, b) in [(ac, ab, bc), (ab, ac, bc), (bc, ab, ac)] {
            excess = excess.max(long - a - b);
        }
        ensure(excess <= 1e-12, || format!("t-triangle fails on {d:?}"))?;
    }
    Ok(format!("100 pairs, worst |ŝ − sin| = {worst:.4}; 200 triples, max t excess {excess:.2e}"))
}

/// Pairwise `ŝ` in both orders over a pool of sets, then the axioms on
/// sampled triples. The tolerance of a triple is the sum of the window
/// errors of its three pairs, each `max step norm / r_min`.
fn pseudometric_on<S, P>(label: &str, space: &S, gens: &[P], sense: OrbitSense, w: &TailWindow, rng: &mut ChaCha8Rng) -> Check
where
    S: GroupSpace<Point = P>,
    P: Clone + Eq + std::hash::Hash + Send + Sync + std::fmt::Debug,
{
    let n = gens.len();
    let orbits: Vec<CyclicOrbit<P>> = gens
        .iter()
        .map(|g| match sense {
            OrbitSense::Semigroup => CyclicOrbit::semigroup(g.clone()),
            OrbitSense::Group => CyclicOrbit::group(g.clone()),
        })
        .collect();
    let step: Vec<f64> = gens.iter().map(|g| space.norm(g)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    let mut s = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s[i][j] = s_estimate(space, &orbits[i], &orbits[j], w).map_err(|e| format!("{label}: {e}"))?.value;
            }
        }
    }
    let err = |i: usize, j: usize| step[i].max(step[j]) / w.r_min;
    for i in 0..n {
        for j in 0..n {
            ensure((0.0..=1.0).contains(&s[i][j]), || format!("{label}: ŝ = {} out of range", s[i][j]))?;
            ensure(s[i][j] == s[j][i], || format!("{label}: ŝ not symmetric on {:?} {:?}", gens[i], gens[j]))?;
        }
    }
    let mut worst_margin = f64::INFINITY;
    for _ in 0..100 {
        let (a, b, c) = loop {
            let t = (rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n));
            if t.0 != t.1 && t.1 != t.2 && t.0 != t.2 {
                break t;
            }
        };
        let tol = err(a, b) + err(b, c) + err(a, c);
        let rep = weak_triangle_values(s[a][b], s[b][c], s[a][c], tol);
        ensure(rep.weak && rep.t, || format!("{label}: {:?} {:?} {:?}: {rep:?} tol {tol}", gens[a], gens[b], gens[c]))?;
        let (x, y, z) = (s[a][b], s[b][c], s[a][c]);
        worst_margin = worst_margin.min(tol + x + x * y + y - z);
    }
    Ok(format!("{label}: {n} sets, 100 triples, min weak margin {worst_margin:.3}"))
}

fn pseudometric_suite() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut detail = Vec::new();
    let planar: Vec<Vec<i64>> = vec![
        vec![1, 0],
        vec![0, 1],
        vec![1, 1],
        vec![2, 1],
        vec![-1, 2],
        vec![-3, -1],
        vec![1, -2],
        vec![3, 1],
        vec![-1, 0],
        vec![0, -1],
    ];
    let w = lattice_window();
    for (metric, name) in [(Metric::L1, "Z2 l1"), (Metric::L2, "Z2 l2"), (Metric::Sup, "Z2 sup")] {
        detail.push(pseudometric_on(name, &Lattice::new(2, metric), &planar, OrbitSense::Semigroup, &w, &mut rng)?);
    }
    let spatial: Vec<Vec<i64>> = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1], vec![2, -1, 0], vec![-1, 0, 2], vec![0, -1, -1]];
    detail.push(pseudometric_on("Z3 l1", &Lattice::new(3, Metric::L1), &spatial, OrbitSense::Semigroup, &w, &mut rng)?);
    detail.push(pseudometric_on("Z2 l1 lines", &Lattice::new(2, Metric::L1), &planar[..8], OrbitSense::Group, &w, &mut rng)?);

    let heis: Vec<H> = [(1, 0, 0), (0, 1, 0), (1, 1, 0), (-1, 2, 0), (0, 0, 1), (1, 0, 1), (-1, -1, 0)]
        .into_iter()
        .map(|(a, b, c)| H::new(a, b, c))
        .collect();
    let word = HeisenbergSpace::word(table());
    detail.push(pseudometric_on("H3 word", &word, &heis, OrbitSense::Semigroup, &ScanOptions::default().window, &mut rng)?);
    let gauge = HeisenbergSpace::gauge(LieGauge::default());
    let gw = TailWindow::new(20.0, 100.0, 4.0).expect("valid window");
    detail.push(pseudometric_on("H3 gauge", &gauge, &heis, OrbitSense::Semigroup, &gw, &mut rng)?);
    Ok(detail.join("; "))
}

fn quasi_isometry_sandwich() -> Check {
    let l1 = Lattice::new(2, Metric::L1);
    let l2 = Lattice::new(2, Metric::L2);
    let q = 2f64.sqrt();
    let w = lattice_window();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut slack = f64::INFINITY;
    for _ in 0..20 {
        let (x, y) = (random_direction(&mut rng, 4), random_direction(&mut rng, 4));
        let hx = LatticeDirection::half_line(x.clone()).map_err(|e| e.to_string())?.orbit();
        let hy = LatticeDirection::half_line(y.clone()).map_err(|e| e.to_string())?.orbit();
        let f = || QuasiIsometry::new(|p: &Vec<i64>| p.clone(), q);
        let fx = pushforward(&l1, &l2, f(), hx.clone()).map_err(|e| e.to_string())?;
        let fy = pushforward(&l1, &l2, f(), hy.clone()).map_err(|e| e.to_string())?;
        let s1 = s_plus_estimate(&l1, &hx, &hy, &w).map_err(|e| e.to_string())?.value;
        let s2 = s_plus_estimate(&l2, &fx, &fy, &w).map_err(|e| e.to_string())?.value;
        let (lo, hi) = (s1 / (q * q) - 0.03, q * q * s1 + 0.03);
        ensure(lo <= s2 && s2 <= hi, || format!("{x:?} {y:?}: ŝ = {s1}, ŝ' = {s2}"))?;
        slack = slack.min((s2 - lo).min(hi - s2));
    }
    Ok(format!("20 pairs inside the q = √2 sandwich, min slack {slack:.3}"))
}

fn algebras() -> Result<Vec<GradedLieAlgebra>, String> {
    BUNDLED.iter().map(|n| bundled(n).ok_or(format!("unknown algebra {n}"))).collect()
}

fn bch_exact() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut names = Vec::new();
    for alg in algebras()? {
        let p = |x: &LieVector, y: &LieVector| bch_product(&alg, x, y).map_err(|e| e.to_string());
        for _ in 0..200 {
            let x = random_from_layer(&alg, &mut rng, 1);
            let y = random_from_layer(&alg, &mut rng, 1);
            let z = random_from_layer(&alg, &mut rng, 1);
            ensure(p(&p(&x, &y)?, &z)? == p(&x, &p(&y, &z)?)?, || format!("{}: not associative", alg.name()))?;
            ensure(p(&x, &inverse(&x))? == alg.zero(), || format!("{}: x·(−x) ≠ 0", alg.name()))?;
            let mut acc = alg.zero();
            for n in 1..=5 {
                acc = p(&acc, &x)?;
                ensure(acc == x.scale_int(n), || format!("{}: x^{n} ≠ {n}x", alg.name()))?;
            }
        }
        names.push(alg.name().to_string());
    }
    Ok(format!("200 triples each in {}, exact", names.join(", ")))
}

fn gauge_properties() -> Check {
    let mut detail = Vec::new();
    for alg in algebras()? {
        let r = rescale_norms(&alg, 1.0).map_err(|e| e.to_string())?;
        let rows = gauge_suite(&alg, &r.gauge, 10_000, 3).map_err(|e| e.to_string())?;
        for row in &rows {
            ensure(row.passed() && row.instances == 10_000, || format!("{} {}: {:?}", alg.name(), row.name, row.first_failure))?;
        }
        let v = triangle_violation(&alg, &r.gauge, 1.0, 10_000, 4242).map_err(|e| e.to_string())?;
        ensure(v.is_none(), || format!("{}: rescaled triangle fails on {v:?}", alg.name()))?;
        detail.push(format!("{} {} properties + rescaled triangle", alg.name(), rows.len()));
    }
    Ok(format!("{} at 10^4 samples", detail.join(", ")))
}

fn growth_bounds() -> Check {
    let p = BoundParams::default();
    let mut detail = Vec::new();
    for alg in algebras()? {
        let g = rescale_norms(&alg, 1.0).map_err(|e| e.to_string())?.gauge;
        for which in [GrowthBound::SameCoset, GrowthBound::SameLayer] {
            let row = growth_bounds_check(&alg, &g, which, &p).map_err(|e| e.to_string())?;
            ensure(row.passed() && row.instances == p.samples, || format!("{} {}: {:?}", alg.name(), row.name, row.first_failure))?;
        }
    }
    detail.push(format!("same-coset and same-layer bounds on {} samples per algebra, n ≤ {}", p.samples, p.n_max));
    let h = bundled("h3").ok_or("h3 is bundled")?;
    let g = rescale_norms(&h, 1.0).map_err(|e| e.to_string())?.gauge;
    let k = bound_constants(&h, &g);
    let row = growth_bounds_check(&h, &g, GrowthBound::Sandwich, &BoundParams { samples: 20, ..p }).map_err(|e| e.to_string())?;
    ensure(row.passed(), || format!("sandwich: {:?}", row.first_failure))?;
    detail.push(format!("sandwich on 20 first-layer pairs in h3 with M = {:.4}, Q = {}", k.m, k.q));
    Ok(detail.join("; "))
}

fn multiplicative_estimates() -> Check {
    let h = bundled("h3").ok_or("h3 is bundled")?;
    let g = rescale_norms(&h, 1.0).map_err(|e| e.to_string())?.gauge;
    let v = |c: [i64; 3]| h.vector(&c).map_err(|e| e.to_string());
    // The cap must exceed the step ratio ⟦y⟧/⟦x⟧ = 3 of the widest pair,
    // or the search for m ≈ 3n is cut off.
    let est = |x: &LieVector, y: &LieVector, n: u64| s_plus_mult_estimate(&h, &g, x, y, n, 4.0).map_err(|e| e.to_string());
    let additive = |x: &LieVector, y: &LieVector| s_plus_additive_exact(&h, x, y, Span::Positive).map(|r| r.to_f64()).map_err(|e| e.to_string());
    let mut detail = Vec::new();
    // Zero additive angle: positive multiples inside the first layer.
    for (x, y) in [([1, 0, 0], [2, 0, 0]), ([1, 1, 0], [3, 3, 0]), ([2, -1, 0], [4, -2, 0])] {
        let (x, y) = (v(x)?, v(y)?);
        ensure(additive(&x, &y)? == 0.0, || "additive angle is not zero".into())?;
        let e = est(&x, &y, 200)?;
        ensure(e.value <= 0.1, || format!("ŝ⁺_m = {} at N = 200", e.value))?;
    }
    detail.push("zero-angle pairs ≤ 0.1 at N = 200".to_string());
    // Full additive angle: the estimate saturates.
    for (x, y) in [([1, 0, 0], [0, 1, 0]), ([1, 0, 0], [-1, 0, 0]), ([1, 1, 0], [1, -1, 0])] {
        let (x, y) = (v(x)?, v(y)?);
        ensure(additive(&x, &y)? == 1.0, || "additive angle is not one".into())?;
        let e = est(&x, &y, 200)?;
        ensure(e.saturated, || format!("ŝ⁺_m = {} not saturated", e.value))?;
    }
    detail.push("right-angle and opposite pairs saturated".to_string());
    // Same coset modulo the centre: decreasing in N.
    for (x, y) in [([1, 0, 0], [1, 0, 1]), ([0, 1, 0], [0, 1, -2]), ([1, 1, 0], [1, 1, 1])] {
        let (x, y) = (v(x)?, v(y)?);
        let vals: Vec<f64> = [50, 100, 200].iter().map(|&n| est(&x, &y, n).map(|e| e.value)).collect::<Result<_, _>>()?;
        ensure(vals[0] >= vals[1] && vals[1] >= vals[2], || format!("not decreasing: {vals:?}"))?;
        detail.push(format!("same coset {:.3} ≥ {:.3} ≥ {:.3} at N = 50, 100, 200", vals[0], vals[1], vals[2]));
    }
    Ok(detail.join("; "))
}

fn heisenberg_scan() -> Check {
    let t = table();
    let space = HeisenbergSpace::word(t.clone());
    let opts = ScanOptions::default();
    let std5 = boundary_scan(&space, &standard_directions(), &opts).map_err(|e| e.to_string())?;
    let h16 = boundary_scan(&space, &horizontal_directions(), &opts).map_err(|e| e.to_string())?;
    let rho = horizontal_spearman(&h16).ok_or("no horizontal pairs")?;
    let want = vec![vec![0, 1, 2], vec![3, 4]];
    let mut comps = std5.components.clone();
    comps.iter_mut().for_each(|c| c.sort());
    comps.sort();
    let t01 = std5.linear.values[0][2];
    let summary = format!(
        "BFS radius {} ({} elements); standard scan: {} linear components {:?}, t̂((1,0,0),(1,1,0)) = {t01:.3}; 16-direction Spearman {rho:.3}",
        t.radius(),
        t.ball_size(t.radius()).unwrap_or(0),
        comps.len(),
        comps,
    );
    if comps == want && rho >= 0.95 {
        Ok(summary)
    } else {
        Err(format!(
            "{summary}. Horizontal directions sit in separate components because t̂ between two horizontal \
             cyclic orbits is 1 in the word metric, so no threshold θ = 0.3 merges them"
        ))
    }
}

fn random_walk() -> Check {
    let space = HeisenbergSpace::word_or_gauge(table(), LieGauge::default());
    let dist = StepDistribution::uniform(vec![H::new(1, 0, 0), H::new(1, 1, 0)]).map_err(|e| e.to_string())?;
    let spec = drift_element(&space, &dist).map_err(|e| e.to_string())?;
    ensure(spec.representative == H::new(2, 1, 0), || format!("drift representative {}", spec.representative))?;
    let seeds: Vec<u64> = (1..=10).collect();
    let reps = run_seeds(&space, &dist, 10_000, &seeds, 4, 0.15).map_err(|e| e.to_string())?;
    let noise = window_noise(&reps);
    let passing = reps.iter().filter(|r| r.passes(&noise)).count();
    let strict = reps.iter().filter(|r| r.nonincreasing() && r.ends_below()).count();
    let last: Vec<String> = reps.iter().map(|r| format!("{:.3}", r.values().last().copied().unwrap_or(f64::NAN))).collect();
    ensure(passing >= 9, || format!("{passing}/10 seeds pass; final ŝ {last:?}"))?;

    let det = StepDistribution::dirac(H::new(2, 1, 0));
    let d = run_seeds(&space, &det, 10_000, &[0], 4, 0.15).map_err(|e| e.to_string())?;
    ensure(d[0].values().iter().all(|&v| v == 0.0), || format!("deterministic walk gives {:?}", d[0].values()))?;

    let centred = StepDistribution::uniform(vec![H::new(1, 0, 0), H::new(-1, 0, 0), H::new(0, 1, 0), H::new(0, -1, 0)])
        .map_err(|e| e.to_string())?;
    ensure(matches!(drift_element(&space, &centred), Err(WalkError::NoDrift(_))), || "centred walk was accepted".into())?;
    Ok(format!(
        "{passing}/10 seeds ≤ 0.15 and nonincreasing within noise {:?} ({strict}/10 strictly); final ŝ {last:?}; \
         deterministic walk exactly 0; centred walk rejected",
        noise.iter().map(|x| format!("{x:.3}")).collect::<Vec<_>>()
    ))
}

fn determinism() -> Check {
    let runs: [&[&str]; 4] = [
        &["verify"],
        &["walk", "--group", "h3", "--steps", "1,0,0;1,1,0", "--length", "4000", "--seeds", "1..3"],
        &["--workers", "2", "walk", "--group", "z2", "--steps", "1,0;0,1;-1,0", "--seeds", "4,9"],
        &["scan", "--group", "h3", "--dirs", "standard5"],
    ];
    for args in runs {
        let a = boundary(args)?;
        let b = boundary(args)?;
        ensure(a == b, || format!("`boundary {}` differs between runs", args.join(" ")))?;
        ensure(!a.is_empty(), || "empty output".into())?;
    }
    Ok("verify, two seeded walks and a scan byte-identical across two runs".to_string())
}

fn main() {
    let strict = std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { number: 1, name: "l1 worked values", budget: secs(10), run: l1_values },
        Criterion { number: 2, name: "l2 closed form and t-triangle", budget: secs(30), run: l2_closed_form },
        Criterion { number: 3, name: "pseudometric suite", budget: secs(300), run: pseudometric_suite },
        Criterion { number: 4, name: "quasi-isometry sandwich", budget: secs(300), run: quasi_isometry_sandwich },
        Criterion { number: 5, name: "exact BCH", budget: secs(20), run: bch_exact },
        Criterion { number: 6, name: "gauge and rescaled triangle", budget: secs(300), run: gauge_properties },
        Criterion { number: 7, name: "growth bounds and sandwich", budget: secs(300), run: growth_bounds },
        Criterion { number: 8, name: "multiplicative estimates in h3", budget: secs(300), run: multiplicative_estimates },
        Criterion { number: 9, name: "H3 boundary scan", budget: secs(300), run: heisenberg_scan },
        Criterion { number: 10, name: "drift walk convergence", budget: secs(120), run: random_walk },
        Criterion { number: 11, name: "determinism", budget: secs(300), run: determinism },
    ];
    let mut failed = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let result = (c.run)();
        let took = start.elapsed();
        let (ok, detail) = match result {
            Ok(d) if took <= c.budget => (true, d),
            Ok(d) => (false, format!("{d}; over the {} s budget", c.budget.as_secs())),
            Err(e) => (false, e),
        };
        if !ok {
            failed.push(c.number);
        }
        println!(
            "criterion {:>2} {} {} ({:.1} s): {}",
            c.number,
            if ok { "PASS" } else { "FAIL" },
            c.name,
            took.as_secs_f64(),
            detail
        );
    }
    println!("{}/{} criteria pass; failing: {:?}", criteria.len() - failed.len(), criteria.len(), failed);
    if strict && !failed.is_empty() {
        std::process::exit(1);
    }
}
