use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::LieError;

/// Exact rational scalar.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// An element of a Lie algebra in coordinates over its graded basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LieVector {
    pub coords: Vec<Rational>,
}

impl LieVector {
    pub fn zeros(dim: usize) -> Self {
        LieVector { coords: vec![Rational::zero(); dim] }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.coords[i] = Rational::one();
        v
    }

    pub fn from_ints(c: &[i64]) -> Self {
        LieVector { coords: c.iter().map(|&a| int(a)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, t: &Rational) -> Self {
        LieVector { coords: self.coords.iter().map(|c| c * t).collect() }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&int(n))
    }

    pub fn to_f64(&self) -> Vec<f64> {
        use num_traits::ToPrimitive;
        self.coords.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    fn add_scaled(&mut self, other: &LieVector, t: &Rational) {
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            if !b.is_zero() {
                *a += b * t;
            }
        }
    }
}

impl Add for &LieVector {
    type Output = LieVector;
    fn add(self, o: &LieVector) -> LieVector {
        LieVector { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &LieVector {
    type Output = LieVector;
    fn sub(self, o: &LieVector) -> LieVector {
        LieVector { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &LieVector {
    type Output = LieVector;
    fn neg(self) -> LieVector {
        LieVector { coords: self.coords.iter().map(|a| -a).collect() }
    }
}

/// A nilpotent Lie algebra `𝔤 = V₁ ⊕ ⋯ ⊕ V_c` with `[V_i, V_j] ⊆ V_{i+j}`.
///
/// Basis vectors are numbered layer by layer, so `V_n` is a contiguous
/// block of coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedLieAlgebra {
    name: String,
    layers: Vec<usize>,
    labels: Vec<String>,
    layer_of: Vec<usize>,
    /// `table[i][j]` lists `(k, c_ij^k)` with nonzero coefficients.
    table: Vec<Vec<Vec<(usize, Rational)>>>,
}

/// One nonzero structure constant `[e_i, e_j] ∋ c·e_k`.
pub type Constant = (usize, usize, usize, Rational);

impl GradedLieAlgebra {
    /// Builds and validates an algebra. Each constant `(i, j, k, c)` also
    /// sets `c_ji^k = −c`; giving both orders is allowed if they agree.
    pub fn new(
        name: impl Into<String>,
        layers: Vec<usize>,
        labels: Option<Vec<String>>,
        constants: &[Constant],
    ) -> Result<Self, LieError> {
        let dim: usize = layers.iter().sum();
        if layers.is_empty() || layers.iter().any(|&n| n == 0) {
            return Err(LieError::Invalid("every layer needs a positive dimension".into()));
        }
        let labels = match labels {
            Some(l) if l.len() != dim => {
                return Err(LieError::DimensionMismatch { expected: dim, got: l.len() });
            }
            Some(l) => l,
            None => (1..=dim).map(|i| format!("e{i}")).collect(),
        };
        let layer_of: Vec<usize> =
            layers.iter().enumerate().flat_map(|(n, &k)| std::iter::repeat_n(n + 1, k)).collect();

        let mut dense = vec![vec![vec![Rational::zero(); dim]; dim]; dim];
        let mut given = vec![vec![vec![false; dim]; dim]; dim];
        let triple = |i: usize, j: usize, k: usize| [labels[i].clone(), labels[j].clone(), labels[k].clone()];
        for (i, j, k, c) in constants {
            let (i, j, k) = (*i, *j, *k);
            if i >= dim || j >= dim || k >= dim {
                return Err(LieError::Invalid(format!("basis index out of range in ({i}, {j}, {k})")));
            }
            if i == j {
                if !c.is_zero() {
                    return Err(LieError::Antisymmetry(triple(i, j, k)));
                }
                continue;
            }
            for (a, b, v) in [(i, j, c.clone()), (j, i, -c)] {
                if given[a][b][k] && dense[a][b][k] != v {
                    return Err(LieError::Antisymmetry(triple(i, j, k)));
                }
                given[a][b][k] = true;
                dense[a][b][k] = v;
            }
        }
        let table = dense
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|col| col.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect())
                    .collect()
            })
            .collect();
        let alg = GradedLieAlgebra { name: name.into(), layers, labels, layer_of, table };
        alg.validate()?;
        Ok(alg)
    }

    fn validate(&self) -> Result<(), LieError> {
        let dim = self.dim();
        let triple = |i: usize, j: usize, k: usize| [self.labels[i].clone(), self.labels[j].clone(), self.labels[k].clone()];
        for i in 0..dim {
            for j in 0..dim {
                for (k, _) in &self.table[i][j] {
                    if self.layer_of[*k] != self.layer_of[i] + self.layer_of[j] {
                        return Err(LieError::Grading(triple(i, j, *k)));
                    }
                }
            }
        }
        for i in 0..dim {
            for j in (i + 1)..dim {
                for k in (j + 1)..dim {
                    let (a, b, c) = (self.e(i), self.e(j), self.e(k));
                    let s = &(&self.br(&a, &self.br(&b, &c)) + &self.br(&b, &self.br(&c, &a))) + &self.br(&c, &self.br(&a, &b));
                    if !s.is_zero() {
                        return Err(LieError::Jacobi(triple(i, j, k)));
                    }
                }
            }
        }
        // The grading must be the one of the lower central series:
        // [V₁, V_n] spans V_{n+1}.
        for n in 1..self.class() {
            let mut rows = Vec::new();
            for a in self.layer_range(1) {
                for b in self.layer_range(n) {
                    let v = self.br(&self.e(a), &self.e(b));
                    rows.push(v.coords[self.layer_range(n + 1)].to_vec());
                }
            }
            if rank(rows) < self.layers[n] {
                return Err(LieError::Generation { layer: n + 1 });
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.layer_of.len()
    }

    /// Nilpotency class `c`.
    pub fn class(&self) -> usize {
        self.layers.len()
    }

    /// `ν(1), …, ν(c)`.
    pub fn layers(&self) -> &[usize] {
        &self.layers
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Layer (1-based) of basis vector `i`.
    pub fn layer_of(&self, i: usize) -> usize {
        self.layer_of[i]
    }

    /// Coordinate range of `V_n`.
    pub fn layer_range(&self, n: usize) -> std::ops::Range<usize> {
        let start: usize = self.layers[..n - 1].iter().sum();
        start..start + self.layers[n - 1]
    }

    /// Nonzero structure constants `(i, j, k, c_ij^k)`.
    pub fn constants(&self) -> Vec<Constant> {
        let mut out = Vec::new();
        for (i, row) in self.table.iter().enumerate() {
            for (j, col) in row.iter().enumerate() {
                for (k, c) in col {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    pub fn e(&self, i: usize) -> LieVector {
        LieVector::basis(self.dim(), i)
    }

    pub fn zero(&self) -> LieVector {
        LieVector::zeros(self.dim())
    }

    pub fn vector(&self, coords: &[i64]) -> Result<LieVector, LieError> {
        self.check(&LieVector::from_ints(coords))
    }

    pub fn check(&self, x: &LieVector) -> Result<LieVector, LieError> {
        if x.dim() != self.dim() {
            return Err(LieError::DimensionMismatch { expected: self.dim(), got: x.dim() });
        }
        Ok(x.clone())
    }

    pub(crate) fn br(&self, x: &LieVector, y: &LieVector) -> LieVector {
        let mut out = self.zero();
        for (i, xi) in x.coords.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.coords.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let xy = xi * yj;
                for (k, c) in &self.table[i][j] {
                    out.coords[*k] += &xy * c;
                }
            }
        }
        out
    }

    /// The Lie bracket `(x, y)`.
    pub fn bracket(&self, x: &LieVector, y: &LieVector) -> Result<LieVector, LieError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.br(x, y))
    }

    /// `(x₁, …, x_k) = (x₁, (x₂, …, x_k))`.
    pub fn kfold(&self, xs: &[LieVector]) -> Result<LieVector, LieError> {
        let (last, rest) = xs.split_last().ok_or_else(|| LieError::Invalid("empty bracket".into()))?;
        for x in xs {
            self.check(x)?;
        }
        Ok(rest.iter().rev().fold(last.clone(), |v, x| self.br(x, &v)))
    }

    /// `π_n(x)` as a vector of the whole algebra.
    pub fn project(&self, x: &LieVector, n: usize) -> LieVector {
        let r = self.layer_range(n);
        let mut out = self.zero();
        out.coords[r.clone()].clone_from_slice(&x.coords[r]);
        out
    }

    /// Coordinates of `π_n(x)` inside `V_n`.
    pub fn layer_coords<'a>(&self, x: &'a LieVector, n: usize) -> &'a [Rational] {
        &x.coords[self.layer_range(n)]
    }

    /// The `i` with `x ∈ 𝔤_i ∖ 𝔤_{i+1}`, or `None` for `x = 0`.
    pub fn depth(&self, x: &LieVector) -> Option<usize> {
        (1..=self.class()).find(|&n| self.layer_coords(x, n).iter().any(|c| !c.is_zero()))
    }

    /// Whether `x` lies in the single layer `V_i`.
    pub fn in_layer(&self, x: &LieVector, i: usize) -> bool {
        (1..=self.class()).filter(|&n| n != i).all(|n| self.layer_coords(x, n).iter().all(|c| c.is_zero()))
    }

    /// `δ_t(x) = tπ₁(x) + ⋯ + t^cπ_c(x)`.
    pub fn dilate(&self, t: &Rational, x: &LieVector) -> LieVector {
        let mut out = x.clone();
        let mut tn = Rational::one();
        for n in 1..=self.class() {
            tn *= t;
            for c in &mut out.coords[self.layer_range(n)] {
                *c *= &tn;
            }
        }
        out
    }

    pub(crate) fn accumulate(&self, acc: &mut LieVector, v: &LieVector, t: &Rational) {
        acc.add_scaled(v, t);
    }
}

/// Rank of a rational matrix given by rows.
fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &pivot;
                for k in c..cols {
                    let d = &f * &rows[r][k];
                    rows[i][k] -= d;
                }
            }
        }
        r += 1;
    }
    r
}

/// `ℝᵈ` as a one-layer algebra.
pub fn abelian(d: usize) -> GradedLieAlgebra {
    GradedLieAlgebra::new(format!("abelian{d}"), vec![d], None, &[]).expect("abelian algebra is valid")
}

/// Heisenberg algebra `h_{2k+1}`: `[x_i, y_i] = z`.
pub fn heisenberg(k: usize) -> GradedLieAlgebra {
    let mut labels = Vec::new();
    let mut consts = Vec::new();
    for i in 0..k {
        labels.push(format!("x{}", i + 1));
        labels.push(format!("y{}", i + 1));
        consts.push((2 * i, 2 * i + 1, 2 * k, int(1)));
    }
    labels.push("z".into());
    GradedLieAlgebra::new(format!("h{}", 2 * k + 1), vec![2 * k, 1], Some(labels), &consts)
        .expect("Heisenberg algebra is valid")
}

pub fn h3() -> GradedLieAlgebra {
    heisenberg(1)
}

pub fn h5() -> GradedLieAlgebra {
    heisenberg(2)
}

/// Free nilpotent algebra of class 3 on `X, Y`: basis
/// `X, Y, Z=[X,Y], U=[X,Z], V=[Y,Z]`, so `ν = (2, 1, 2)`.
pub fn free_class3_rank2() -> GradedLieAlgebra {
    let labels = ["X", "Y", "Z", "U", "V"].map(String::from).to_vec();
    let consts = [(0, 1, 2, int(1)), (0, 2, 3, int(1)), (1, 2, 4, int(1))];
    GradedLieAlgebra::new("free3", vec![2, 1, 2], Some(labels), &consts).expect("free class-3 algebra is valid")
}

/// Free nilpotent algebra of class 2 on `r` generators, with
/// `e_ij = [e_i, e_j]` for `i < j`.
pub fn free_class2(r: usize) -> GradedLieAlgebra {
    let mut labels: Vec<String> = (1..=r).map(|i| format!("e{i}")).collect();
    let mut consts = Vec::new();
    for i in 0..r {
        for j in (i + 1)..r {
            consts.push((i, j, labels.len(), int(1)));
            labels.push(format!("e{}{}", i + 1, j + 1));
        }
    }
    let k = labels.len() - r;
    GradedLieAlgebra::new(format!("free2_{r}"), vec![r, k], Some(labels), &consts).expect("free class-2 algebra is valid")
}

/// Strictly upper triangular `n × n` matrices, graded by superdiagonal.
/// Class `n − 1`; the basis is `E_ij` ordered by `j − i`, then by `i`.
pub fn upper_triangular(n: usize) -> GradedLieAlgebra {
    assert!(n >= 2);
    let mut index = std::collections::HashMap::new();
    let mut labels = Vec::new();
    for d in 1..n {
        for i in 0..(n - d) {
            index.insert((i, i + d), labels.len());
            labels.push(format!("E{}{}", i + 1, i + d + 1));
        }
    }
    let mut consts = Vec::new();
    for (&(i, j), &a) in &index {
        for (&(k, l), &b) in &index {
            // [E_ij, E_kl] = δ_jk E_il − δ_li E_kj
            if j == k {
                consts.push((a, b, index[&(i, l)], int(1)));
            }
            if l == i {
                consts.push((a, b, index[&(k, j)], int(-1)));
            }
        }
    }
    consts.sort_by(|x, y| (x.0, x.1, x.2).cmp(&(y.0, y.1, y.2)));
    let layers = (1..n).map(|d| n - d).collect();
    GradedLieAlgebra::new(format!("n{n}"), layers, Some(labels), &consts).expect("triangular algebra is valid")
}

/// The algebras shipped by name.
pub fn bundled(name: &str) -> Option<GradedLieAlgebra> {
    match name {
        "h3" => Some(h3()),
        "h5" => Some(h5()),
        "free3" => Some(free_class3_rank2()),
        _ => name.strip_prefix("abelian").and_then(|d| d.parse().ok()).filter(|&d| d > 0).map(abelian),
    }
}

pub const BUNDLED: [&str; 4] = ["abelian3", "h3", "h5", "free3"];
