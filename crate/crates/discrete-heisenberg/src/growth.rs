use crate::element::LieGauge;
use crate::table::WordMetricTable;

/// `(n, |B(n)|)` for `n = 0..=radius`.
pub fn ball_growth(t: &WordMetricTable) -> Vec<(u32, u64)> {
    (0..=t.radius()).map(|n| (n, t.ball_size(n).expect("within radius"))).collect()
}

/// How well `|B(n)| ≈ C·n^degree` fits on a range of radii.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthFit {
    pub degree: u32,
    pub lo: u32,
    pub hi: u32,
    /// Smallest and largest `|B(n)|/n^degree` over the range.
    pub min_ratio: f64,
    pub max_ratio: f64,
}

impl GrowthFit {
    /// True when some `C` fits every radius within a factor 2, that is
    /// when the ratios span at most a factor 4.
    pub fn within_factor_two(&self) -> bool {
        self.max_ratio <= 4.0 * self.min_ratio
    }
}

pub fn growth_fit(t: &WordMetricTable, degree: u32, lo: u32, hi: u32) -> Option<GrowthFit> {
    if lo == 0 || lo > hi || hi > t.radius() {
        return None;
    }
    let ratios: Vec<f64> = (lo..=hi).map(|n| t.ball_size(n).unwrap() as f64 / (n as f64).powi(degree as i32)).collect();
    Some(GrowthFit {
        degree,
        lo,
        hi,
        min_ratio: ratios.iter().copied().fold(f64::INFINITY, f64::min),
        max_ratio: ratios.iter().copied().fold(0.0, f64::max),
    })
}

/// Empirical comparison of word length and gauge on the ball:
/// `|g|/⟦g⟧` and `⟦g⟧/|g|` over elements with `|g| ≥ min_length`.
#[derive(Debug, Clone, PartialEq)]
pub struct QEstimate {
    pub min_length: u32,
    pub samples: u64,
    pub max_word_over_gauge: f64,
    pub max_gauge_over_word: f64,
}

impl QEstimate {
    /// The multiplicative constant `q` with `q⁻¹⟦g⟧ ≤ |g| ≤ q⟦g⟧` on the
    /// sampled elements.
    pub fn q(&self) -> f64 {
        self.max_word_over_gauge.max(self.max_gauge_over_word)
    }
}

pub fn empirical_q(t: &WordMetricTable, gauge: &LieGauge, min_length: u32) -> QEstimate {
    let mut e = QEstimate { min_length, samples: 0, max_word_over_gauge: 0.0, max_gauge_over_word: 0.0 };
    for (g, l) in t.entries() {
        if l < min_length.max(1) {
            continue;
        }
        let q = gauge.value(&g);
        let l = l as f64;
        e.samples += 1;
        e.max_word_over_gauge = e.max_word_over_gauge.max(l / q);
        e.max_gauge_over_word = e.max_gauge_over_word.max(q / l);
    }
    e
}
