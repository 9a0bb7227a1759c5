use std::fmt;

/// An element of the integer Heisenberg group in Mal'tsev coordinates.
///
/// The law is `(a,b,c)·(a′,b′,c′) = (a+a′, b+b′, c+c′+a·b′)`, which is the
/// product of the upper unitriangular matrices `[[1,a,c],[0,1,b],[0,0,1]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HeisenbergElement {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

pub type H = HeisenbergElement;

impl HeisenbergElement {
    pub const IDENTITY: H = H { a: 0, b: 0, c: 0 };

    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        H { a, b, c }
    }

    pub fn is_identity(&self) -> bool {
        *self == H::IDENTITY
    }

    pub fn mul(&self, o: &H) -> H {
        H { a: self.a + o.a, b: self.b + o.b, c: self.c + o.c + self.a * o.b }
    }

    pub fn inverse(&self) -> H {
        H { a: -self.a, b: -self.b, c: -self.c + self.a * self.b }
    }

    /// `gⁿ = (na, nb, nc + ab·n(n−1)/2)`, valid for negative `n` too.
    pub fn pow(&self, n: i64) -> H {
        let tri = (n as i128) * (n as i128 - 1) / 2;
        let c = n as i128 * self.c as i128 + self.a as i128 * self.b as i128 * tri;
        H { a: n * self.a, b: n * self.b, c: i64::try_from(c).expect("power overflows i64") }
    }

    /// `x⁻¹y`, the element whose word length is `d(x, y)`.
    pub fn between(x: &H, y: &H) -> H {
        // (−a,−b,−c+ab)·(a′,b′,c′) expanded.
        H { a: y.a - x.a, b: y.b - x.b, c: y.c - x.c + x.a * x.b - x.a * y.b }
    }

    /// Image in the abelianization `ℤ²`.
    pub fn abelian(&self) -> (i64, i64) {
        (self.a, self.b)
    }

    /// Central coordinate of the logarithm, doubled: `log g = a e₁ + b e₂ +
    /// ((2c − ab)/2) e₃`, so this returns `2c − ab`.
    pub fn log_central_doubled(&self) -> i64 {
        2 * self.c - self.a * self.b
    }

    /// The logarithm `(a, b, c − ab/2)` in floating point.
    pub fn log_coords(&self) -> [f64; 3] {
        [self.a as f64, self.b as f64, self.log_central_doubled() as f64 / 2.0]
    }
}

impl fmt::Display for HeisenbergElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

impl std::str::FromStr for HeisenbergElement {
    type Err = String;

    /// Parses `a,b,c` with optional surrounding parentheses.
    fn from_str(s: &str) -> Result<Self, String> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = t.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(format!("expected three coordinates in {s:?}"));
        }
        let n = |p: &str| p.parse::<i64>().map_err(|e| format!("{p:?}: {e}"));
        Ok(H::new(n(parts[0])?, n(parts[1])?, n(parts[2])?))
    }
}

/// The homogeneous gauge of the Heisenberg Lie algebra in log coordinates:
/// `max(λ₁‖(a,b)‖₂, (λ₂|c − ab/2|)^{1/2})`.
///
/// Used as a stand-in for the word metric where the word length is out of
/// reach. The two are comparable only up to a multiplicative constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LieGauge {
    pub horizontal: f64,
    pub central: f64,
}

impl Default for LieGauge {
    fn default() -> Self {
        LieGauge { horizontal: 1.0, central: 1.0 }
    }
}

impl LieGauge {
    pub fn value(&self, g: &H) -> f64 {
        let h = self.horizontal * (g.a as f64).hypot(g.b as f64);
        let z = (self.central * g.log_central_doubled().unsigned_abs() as f64 / 2.0).sqrt();
        h.max(z)
    }
}
