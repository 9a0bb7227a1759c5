use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::{EuclidError, Sense};

/// Exact rational values of the l1 oracle.
pub type Exact = Ratio<i128>;

fn check(x: &[i64], y: &[i64]) -> Result<(), EuclidError> {
    if x.len() != y.len() {
        return Err(EuclidError::DimensionMismatch(x.len(), y.len()));
    }
    if x.iter().all(|&a| a == 0) || y.iter().all(|&a| a == 0) {
        return Err(EuclidError::ZeroVector);
    }
    Ok(())
}

/// Sine of the angle between `x` and `y`, through the Lagrange identity
/// `|x|²|y|² − ⟨x,y⟩² = Σ_{i<j} (x_i y_j − x_j y_i)²`, which is exact in
/// integers.
fn sine(x: &[i64], y: &[i64]) -> f64 {
    let mut cross2: i128 = 0;
    for i in 0..x.len() {
        for j in (i + 1)..x.len() {
            let c = x[i] as i128 * y[j] as i128 - x[j] as i128 * y[i] as i128;
            cross2 += c * c;
        }
    }
    let nx: i128 = x.iter().map(|&a| (a as i128).pow(2)).sum();
    let ny: i128 = y.iter().map(|&a| (a as i128).pow(2)).sum();
    ((cross2 as f64) / (nx as f64 * ny as f64)).sqrt()
}

fn dot(x: &[i64], y: &[i64]) -> i128 {
    x.iter().zip(y).map(|(&a, &b)| a as i128 * b as i128).sum()
}

/// Angle in `[0, π]` between the half-lines `H_x` and `H_y`.
pub fn ray_angle(x: &[i64], y: &[i64]) -> Result<f64, EuclidError> {
    check(x, y)?;
    let s = sine(x, y).min(1.0);
    let d = dot(x, y);
    Ok(if d >= 0 { s.asin() } else { std::f64::consts::PI - s.asin() })
}

/// Closed form in the l2 plane and its higher-dimensional analogues:
/// `s(L_x, L_y) = sin ∠(L_x, L_y)` and
/// `s(H_x, H_y) = sin(min(π/2, ∠(H_x, H_y)))`.
pub fn l2_line_s_exact(x: &[i64], y: &[i64], sense: Sense) -> Result<f64, EuclidError> {
    check(x, y)?;
    let s = sine(x, y);
    Ok(match sense {
        Sense::Line => s,
        Sense::HalfLine if dot(x, y) <= 0 => 1.0,
        Sense::HalfLine => s,
    })
}

/// `s⁺(H_x, H_y)` under l1: `inf_{u>0} ‖y − u·x‖₁ / (u‖x‖₁)`.
///
/// Substituting `w = 1/u` turns the objective into `Σ|w·y_i − x_i| / ‖x‖₁`,
/// convex and piecewise linear in `w > 0`. Its infimum is attained at a
/// breakpoint `w = x_i/y_i > 0` or in the limit `w → 0⁺`, where it equals 1.
/// As `w → ∞` it diverges.
pub fn l1_ray_s_plus_exact(x: &[i64], y: &[i64]) -> Result<Exact, EuclidError> {
    check(x, y)?;
    let nx: i128 = x.iter().map(|&a| (a as i128).abs()).sum();
    let eval = |w: Exact| -> Exact {
        let mut acc = Exact::zero();
        for (&xi, &yi) in x.iter().zip(y) {
            acc += (w * Exact::from(yi as i128) - Exact::from(xi as i128)).abs();
        }
        acc / Exact::from(nx)
    };
    let mut best = Exact::from(1);
    for (&xi, &yi) in x.iter().zip(y) {
        if yi == 0 {
            continue;
        }
        let w = Exact::new(xi as i128, yi as i128);
        if w > Exact::zero() {
            let v = eval(w);
            if v < best {
                best = v;
            }
        }
    }
    Ok(best)
}

/// `s(H_x, H_y)` or `s(L_x, L_y)` under l1, exactly.
///
/// For lines each of `H_{±y}` must lie in the cone over `H_x ∪ H_{−x}`,
/// and by homogeneity a whole half-line picks the better of the two.
pub fn l1_ray_s_exact(x: &[i64], y: &[i64], sense: Sense) -> Result<Exact, EuclidError> {
    let neg = |v: &[i64]| v.iter().map(|a| -a).collect::<Vec<_>>();
    let plus = |a: &[i64], b: &[i64]| -> Result<Exact, EuclidError> {
        match sense {
            Sense::HalfLine => l1_ray_s_plus_exact(a, b),
            Sense::Line => Ok(l1_ray_s_plus_exact(a, b)?.min(l1_ray_s_plus_exact(&neg(a), b)?)),
        }
    };
    Ok(plus(x, y)?.max(plus(y, x)?))
}

/// `s ≤ 2 sin(∠/2) ≤ 4s` for l2 half-lines, with `s` from the closed form.
pub fn angle_bounds_hold(x: &[i64], y: &[i64]) -> Result<bool, EuclidError> {
    let s = l2_line_s_exact(x, y, Sense::HalfLine)?;
    let chord = 2.0 * (ray_angle(x, y)? / 2.0).sin();
    Ok(s <= chord + 1e-12 && chord <= 4.0 * s + 1e-12)
}
