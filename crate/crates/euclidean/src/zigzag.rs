use metric_core::{norm_within, SpaceError, UnboundedSet};

use crate::Lattice;

/// The staircase ray through `x_{2n} = (2ⁿ−1, 2ⁿ−1)` and
/// `x_{2n+1} = (2ⁿ⁺¹−1, 2ⁿ−1)`, consecutive corners joined by axis-parallel
/// lattice segments. It is an l1 geodesic ray that keeps swinging between
/// the diagonal and a shallower slope, so it stays a definite angle away
/// from every half-line.
#[derive(Debug, Clone, Copy, Default)]
pub struct ZigZagRay;

impl ZigZagRay {
    /// Lattice points of the path in order, until the l1 length exceeds
    /// `len`.
    pub fn path(len: i64) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0, 0]];
        let (mut a, mut b) = (0i64, 0i64);
        let mut k = 0u32;
        while a + b <= len {
            // Horizontal leg to (2^{k+1}-1, 2^k-1), then vertical leg.
            let target = (1i64 << (k + 1)) - 1;
            while a < target && a + b <= len {
                a += 1;
                out.push(vec![a, b]);
            }
            while b < target && a + b <= len {
                b += 1;
                out.push(vec![a, b]);
            }
            k += 1;
        }
        out
    }
}

impl UnboundedSet<Lattice> for ZigZagRay {
    fn slice(&self, space: &Lattice, r: f64) -> Result<Vec<Vec<i64>>, SpaceError> {
        if space.dim != 2 {
            return Err(SpaceError::DimensionMismatch { expected: 2, got: space.dim });
        }
        if !(r >= 0.0) {
            return Err(SpaceError::NegativeRadius(r));
        }
        // Every bundled metric is at least half the l1 metric in the plane.
        let shift: i64 = space.origin.iter().map(|o| o.abs()).sum();
        let len = (2.0 * r).ceil() as i64 + shift;
        let mut out = Vec::new();
        for p in Self::path(len) {
            if norm_within(space, &p, r)?.is_some() {
                out.push(p);
            }
        }
        Ok(out)
    }

    fn label(&self) -> String {
        "zigzag".into()
    }
}
