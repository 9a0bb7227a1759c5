use std::collections::VecDeque;
use std::io::{Read, Write};

use crate::element::H;
use crate::HeisError;

/// Default BFS radius for the standard generators.
pub const DEFAULT_RADIUS: u32 = 22;

/// Default ceiling on table entries (one byte each).
pub const DEFAULT_BUDGET: u64 = 1 << 30;

const UNKNOWN: u8 = u8::MAX;
const MAGIC: &[u8; 8] = b"HEISBFS\0";
const FORMAT_VERSION: u32 = 1;

/// A finite symmetric generating set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingSet {
    gens: Vec<H>,
}

impl GeneratingSet {
    /// `{(±1,0,0), (0,±1,0)}`.
    pub fn standard() -> Self {
        Self::new(vec![H::new(1, 0, 0), H::new(-1, 0, 0), H::new(0, 1, 0), H::new(0, -1, 0)])
            .expect("standard generators")
    }

    /// Checks symmetry and generation. A subset of a nilpotent group
    /// generates it iff its image generates the abelianization, so it is
    /// enough that the 2×2 minors of the images have gcd 1.
    pub fn new(gens: Vec<H>) -> Result<Self, HeisError> {
        if gens.is_empty() {
            return Err(HeisError::NotGenerating);
        }
        for g in &gens {
            if g.is_identity() {
                return Err(HeisError::InvalidGenerator("the identity".into()));
            }
            if !gens.contains(&g.inverse()) {
                return Err(HeisError::NotSymmetric(g.to_string()));
            }
        }
        let mut gcd = 0i64;
        for g in &gens {
            for h in &gens {
                gcd = gcd_i64(gcd, g.a * h.b - g.b * h.a);
            }
        }
        if gcd != 1 {
            return Err(HeisError::NotGenerating);
        }
        let mut gens = gens;
        gens.sort();
        gens.dedup();
        Ok(GeneratingSet { gens })
    }

    pub fn elements(&self) -> &[H] {
        &self.gens
    }

    /// Largest `|a|`, `|b|`, `|c|` and `|a|+|b|` over the generators.
    fn bounds(&self) -> (i64, i64, i64, i64) {
        let m = |f: fn(&H) -> i64| self.gens.iter().map(f).max().unwrap_or(0);
        (m(|g| g.a.abs()), m(|g| g.b.abs()), m(|g| g.c.abs()), m(|g| g.a.abs() + g.b.abs()))
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Word length, exact or bounded below.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordLength {
    Exact(u32),
    AtLeast(u32),
}

/// Breadth-first word lengths from the identity within a radius.
///
/// Storage is a dense byte array over the box `|a| ≤ rA`, `|b| ≤ rB`,
/// `|c| ≤ r(C + rAB)`, where `A, B, C` bound the generator coordinates;
/// every word of length at most `r` lands in it. Lengths up to twice the
/// radius are recovered exactly by splitting a geodesic at its point on the
/// sphere of radius `r`.
#[derive(Debug, Clone)]
pub struct WordMetricTable {
    gens: GeneratingSet,
    radius: u32,
    half: [i64; 3],
    /// Generator coordinate bounds, see [`GeneratingSet::bounds`].
    bounds: (i64, i64, i64, i64),
    standard: bool,
    lengths: Vec<u8>,
    sphere: Vec<H>,
    ball_sizes: Vec<u64>,
}

impl WordMetricTable {
    pub fn standard(radius: u32) -> Result<Self, HeisError> {
        Self::build(GeneratingSet::standard(), radius, DEFAULT_BUDGET)
    }

    pub fn build(gens: GeneratingSet, radius: u32, budget: u64) -> Result<Self, HeisError> {
        if radius >= UNKNOWN as u32 {
            return Err(HeisError::RadiusTooLarge(radius));
        }
        let half = box_for(&gens, radius as i64);
        let entries = half.iter().map(|h| 2 * *h as u64 + 1).product::<u64>();
        if entries > budget {
            return Err(HeisError::MemoryBudgetExceeded { needed: entries, budget });
        }
        let mut t = WordMetricTable {
            bounds: gens.bounds(),
            standard: gens == GeneratingSet::standard(),
            gens,
            radius,
            half,
            lengths: vec![UNKNOWN; entries as usize],
            sphere: Vec::new(),
            ball_sizes: Vec::new(),
        };
        let mut queue = VecDeque::new();
        let origin = t.index(&H::IDENTITY).expect("identity is in the box");
        t.lengths[origin] = 0;
        queue.push_back(H::IDENTITY);
        let mut counts = vec![0u64; radius as usize + 1];
        let steps = t.gens.gens.clone();
        while let Some(g) = queue.pop_front() {
            let d = t.lengths[t.index(&g).expect("queued elements are in the box")];
            counts[d as usize] += 1;
            if d as u32 == radius {
                t.sphere.push(g);
                continue;
            }
            for s in &steps {
                let n = g.mul(s);
                let i = t.index(&n).expect("box contains the ball");
                if t.lengths[i] == UNKNOWN {
                    t.lengths[i] = d + 1;
                    queue.push_back(n);
                }
            }
        }
        let mut acc = 0;
        t.ball_sizes = counts
            .iter()
            .map(|c| {
                acc += c;
                acc
            })
            .collect();
        Ok(t)
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn generators(&self) -> &GeneratingSet {
        &self.gens
    }

    /// `|B(n)|` for `n ≤ radius`.
    pub fn ball_size(&self, n: u32) -> Option<u64> {
        self.ball_sizes.get(n as usize).copied()
    }

    /// Elements at distance exactly `radius`.
    pub fn sphere(&self) -> &[H] {
        &self.sphere
    }

    /// All elements of the ball with their lengths, in index order.
    pub fn entries(&self) -> impl Iterator<Item = (H, u32)> + '_ {
        let [ha, hb, hc] = self.half;
        let (wb, wc) = (2 * hb + 1, 2 * hc + 1);
        self.lengths.iter().enumerate().filter(|(_, &l)| l != UNKNOWN).map(move |(i, &l)| {
            let i = i as i64;
            let g = H::new(i / (wb * wc) - ha, (i / wc) % wb - hb, i % wc - hc);
            (g, l as u32)
        })
    }

    fn index(&self, g: &H) -> Option<usize> {
        let [ha, hb, hc] = self.half;
        if g.a.abs() > ha || g.b.abs() > hb || g.c.abs() > hc {
            return None;
        }
        let (wb, wc) = (2 * hb + 1, 2 * hc + 1);
        Some((((g.a + ha) * wb + (g.b + hb)) * wc + (g.c + hc)) as usize)
    }

    /// Length from the table alone.
    pub fn lookup(&self, g: &H) -> Option<u32> {
        let l = self.lengths[self.index(g)?];
        (l != UNKNOWN).then_some(l as u32)
    }

    /// A lower bound from the abelianization.
    pub fn abelian_bound(&self, g: &H) -> u32 {
        let (a, b, _, s) = self.bounds;
        let up = |x: i64, m: i64| if m == 0 { 0 } else { (x.abs() + m - 1) / m };
        up(g.a, a).max(up(g.b, b)).max(up(g.a.abs() + g.b.abs(), s)) as u32
    }

    /// A lower bound on the word length of `g` valid beyond the table.
    ///
    /// For the standard generators a word traces a lattice path to `(a, b)`
    /// whose signed area against the chord is `c − ab/2`. Closing the path
    /// with the chord gives a loop of taxicab length at most `L + |a| + |b|`,
    /// and such a loop encloses at most a sixteenth of its squared length,
    /// so `L ≥ 4√|c − ab/2| − |a| − |b|`. Other generating sets use the box
    /// bound `|c| ≤ L(C + L·AB)`.
    pub fn lower_bound(&self, g: &H) -> u32 {
        let ab = self.abelian_bound(g);
        let area = if self.standard {
            let doubled = g.log_central_doubled().unsigned_abs() as f64;
            // 4√(d/2) = √(8d); the nudge keeps float error from rounding up.
            let l = (8.0 * doubled).sqrt() - (g.a.abs() + g.b.abs()) as f64;
            (l - 1e-9).ceil().max(0.0) as u32
        } else {
            let (a, b, c, _) = self.bounds;
            let (c_abs, mut r) = (g.c.unsigned_abs() as i128, 0i128);
            while r * (c as i128 + r * (a * b) as i128) < c_abs {
                r += 1;
            }
            r as u32
        };
        ab.max(area)
    }

    /// Word length of `g`, exact up to twice the radius.
    pub fn word_length(&self, g: &H) -> WordLength {
        if let Some(l) = self.lookup(g) {
            return WordLength::Exact(l);
        }
        let r = self.radius;
        let bound = self.lower_bound(g).max(r + 1);
        if bound > 2 * r {
            return WordLength::AtLeast(bound);
        }
        // Outside the table, so longer than r: a geodesic passes through
        // some h with |h| = r and continues with h⁻¹g.
        let mut best = u32::MAX;
        for h in &self.sphere {
            let rest = H::between(h, g);
            let lb = self.lower_bound(&rest);
            if lb > r || r + lb >= best {
                continue;
            }
            if let Some(l) = self.lookup(&rest) {
                best = best.min(r + l);
                if best == bound {
                    break;
                }
            }
        }
        if best == u32::MAX {
            WordLength::AtLeast(bound.max(2 * r + 1))
        } else {
            WordLength::Exact(best)
        }
    }

    /// Serializes the table: magic, format version, radius, generators,
    /// box, lengths. Little endian throughout.
    pub fn write_to<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        w.write_all(MAGIC)?;
        w.write_all(&FORMAT_VERSION.to_le_bytes())?;
        w.write_all(&self.radius.to_le_bytes())?;
        w.write_all(&(self.gens.gens.len() as u32).to_le_bytes())?;
        for g in &self.gens.gens {
            for x in [g.a, g.b, g.c] {
                w.write_all(&x.to_le_bytes())?;
            }
        }
        for x in self.half {
            w.write_all(&x.to_le_bytes())?;
        }
        w.write_all(&self.lengths)
    }

    /// Reads a table written by [`write_to`](Self::write_to), rejecting
    /// blobs with a different magic, version, radius or generating set.
    pub fn read_from<R: Read>(mut r: R, gens: &GeneratingSet, radius: u32) -> Result<Self, HeisError> {
        let bad = |m: &str| HeisError::Cache(m.to_string());
        let io = |e: std::io::Error| HeisError::Cache(e.to_string());
        let mut magic = [0u8; 8];
        r.read_exact(&mut magic).map_err(io)?;
        if &magic != MAGIC {
            return Err(bad("bad magic header"));
        }
        let u32_at = |r: &mut R| -> Result<u32, HeisError> {
            let mut b = [0u8; 4];
            r.read_exact(&mut b).map_err(io)?;
            Ok(u32::from_le_bytes(b))
        };
        let i64_at = |r: &mut R| -> Result<i64, HeisError> {
            let mut b = [0u8; 8];
            r.read_exact(&mut b).map_err(io)?;
            Ok(i64::from_le_bytes(b))
        };
        if u32_at(&mut r)? != FORMAT_VERSION {
            return Err(bad("unsupported format version"));
        }
        let stored_radius = u32_at(&mut r)?;
        if stored_radius != radius {
            return Err(bad(&format!("radius {stored_radius} does not match {radius}")));
        }
        let n = u32_at(&mut r)? as usize;
        let mut stored = Vec::with_capacity(n);
        for _ in 0..n {
            stored.push(H::new(i64_at(&mut r)?, i64_at(&mut r)?, i64_at(&mut r)?));
        }
        if stored != gens.gens {
            return Err(bad("generating set does not match"));
        }
        let half = [i64_at(&mut r)?, i64_at(&mut r)?, i64_at(&mut r)?];
        if half != box_for(gens, radius as i64) {
            return Err(bad("box does not match the radius"));
        }
        let entries = half.iter().map(|h| 2 * *h as usize + 1).product::<usize>();
        let mut lengths = vec![0u8; entries];
        r.read_exact(&mut lengths).map_err(io)?;
        let mut t = WordMetricTable { gens: gens.clone(), radius, half, bounds: gens.bounds(), standard: *gens == GeneratingSet::standard(), lengths, sphere: Vec::new(), ball_sizes: Vec::new() };
        let mut counts = vec![0u64; radius as usize + 1];
        let mut sphere = Vec::new();
        for (g, l) in t.entries() {
            if l > radius {
                return Err(bad("length exceeds radius"));
            }
            counts[l as usize] += 1;
            if l == radius {
                sphere.push(g);
            }
        }
        let mut acc = 0;
        t.ball_sizes = counts
            .iter()
            .map(|c| {
                acc += c;
                acc
            })
            .collect();
        t.sphere = sphere;
        Ok(t)
    }
}

fn box_for(gens: &GeneratingSet, r: i64) -> [i64; 3] {
    let (a, b, c, _) = gens.bounds();
    [r * a, r * b, r * (c + r * a * b)]
}
