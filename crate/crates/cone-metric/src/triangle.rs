use metric_core::{PointedSpace, UnboundedSet};

use crate::estimate::s_estimate;
use crate::{ConeError, TailWindow};

/// The three pairwise values of a triple and which inequalities they meet.
///
/// Each inequality is checked with every side in turn as the long side.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleReport {
    pub s_rs: f64,
    pub s_st: f64,
    pub s_rt: f64,
    /// `s(R,T) ≤ s(R,S) + s(S,T)`.
    pub plain: bool,
    /// `s(R,T) ≤ s(R,S) + s(R,S)s(S,T) + s(S,T)`.
    pub weak: bool,
    /// `t(R,T) ≤ t(R,S) + t(S,T)`.
    pub t: bool,
}

pub fn weak_triangle_values(s_rs: f64, s_st: f64, s_rt: f64, tol: f64) -> TriangleReport {
    let rotations = [(s_rs, s_st, s_rt), (s_st, s_rt, s_rs), (s_rt, s_rs, s_st)];
    let mut plain = true;
    let mut weak = true;
    let mut t = true;
    for (a, b, c) in rotations {
        plain &= c <= a + b + tol;
        weak &= c <= a + a * b + b + tol;
        t &= c.sqrt() <= a.sqrt() + b.sqrt() + tol;
    }
    TriangleReport { s_rs, s_st, s_rt, plain, weak, t }
}

/// Estimate all three pairwise `ŝ` values and test the inequalities with
/// slack `tol`.
pub fn weak_triangle_check<S, A, B, C>(
    space: &S,
    r: &A,
    s: &B,
    t: &C,
    w: &TailWindow,
    tol: f64,
) -> Result<TriangleReport, ConeError>
where
    S: PointedSpace + ?Sized,
    A: UnboundedSet<S> + ?Sized,
    B: UnboundedSet<S> + ?Sized,
    C: UnboundedSet<S> + ?Sized,
{
    let rs = s_estimate(space, r, s, w)?.value;
    let st = s_estimate(space, s, t, w)?.value;
    let rt = s_estimate(space, r, t, w)?.value;
    Ok(weak_triangle_values(rs, st, rt, tol))
}
