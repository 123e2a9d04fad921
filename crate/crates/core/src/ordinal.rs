//! Bandt-Pompe symbolization: ordinal patterns and their empirical
//! probability distribution.
//!
//! A window `(x[s-(D-1)τ], …, x[s-τ], x[s])` is mapped to the permutation
//! `π = (r_0, …, r_{D-1})` of time offsets (measured backwards from `s`, in
//! units of `τ`) such that
//!
//! ```text
//! x[s - r_{D-1}·τ] <= x[s - r_{D-2}·τ] <= … <= x[s - r_0·τ]
//! ```
//!
//! i.e. `r_{D-1}` points at the smallest value and `r_0` at the largest. A
//! strictly increasing window therefore maps to the identity `(0, 1, …, D-1)`
//! and a strictly decreasing one to `(D-1, …, 1, 0)`.
//!
//! Patterns are indexed by their Lehmer code, so the identity has index 0
//! and the full reversal has index `D! - 1`.

use crate::error::{Error, Result};
use crate::series::RawSeries;
use crate::synth::Prng;

/// Largest supported embedding dimension (`10! = 3 628 800` counters).
pub const MAX_DIMENSION: usize = 10;

const FACTORIALS: [usize; MAX_DIMENSION + 1] =
    [1, 1, 2, 6, 24, 120, 720, 5040, 40320, 362_880, 3_628_800];

/// `D!`, the number of distinct ordinal patterns of order `D`.
pub fn factorial(d: usize) -> Result<usize> {
    FACTORIALS
        .get(d)
        .copied()
        .ok_or(Error::UnsupportedDimension(d))
}

/// How two equal values inside one window are ordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieRule {
    /// `r_i < r_{i-1}` whenever `x[s - r_i·τ] = x[s - r_{i-1}·τ]`: among equal
    /// values the one with the smaller backward offset (the later
    /// observation) sits lower in the chain.
    #[default]
    LaterBelow,
    /// Among equal values the earlier observation sits lower (the convention
    /// of a stable ascending argsort).
    EarlierBelow,
}

impl std::str::FromStr for TieRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "later-below" => Ok(TieRule::LaterBelow),
            "earlier-below" => Ok(TieRule::EarlierBelow),
            other => Err(Error::InvalidInput(format!(
                "unknown tie rule '{other}' (expected later-below or earlier-below)"
            ))),
        }
    }
}

impl std::fmt::Display for TieRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TieRule::LaterBelow => "later-below",
            TieRule::EarlierBelow => "earlier-below",
        })
    }
}

/// A permutation `(r_0, …, r_{D-1})` of `{0, …, D-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrdinalPattern {
    ranks: Vec<usize>,
}

impl OrdinalPattern {
    pub fn from_ranks(ranks: Vec<usize>) -> Result<Self> {
        let d = ranks.len();
        if d > MAX_DIMENSION {
            return Err(Error::UnsupportedDimension(d));
        }
        let mut seen = [false; MAX_DIMENSION];
        for &r in &ranks {
            if r >= d || seen[r] {
                return Err(Error::InvalidInput(format!(
                    "{ranks:?} is not a permutation of 0..{d}"
                )));
            }
            seen[r] = true;
        }
        Ok(Self { ranks })
    }

    /// Decodes a Lehmer index in `[0, D!)`.
    pub fn from_index(index: usize, dimension: usize) -> Result<Self> {
        let m = factorial(dimension)?;
        if index >= m {
            return Err(Error::InvalidInput(format!(
                "pattern index {index} out of range for dimension {dimension}"
            )));
        }
        let mut pool: Vec<usize> = (0..dimension).collect();
        let mut rest = index;
        let mut ranks = Vec::with_capacity(dimension);
        for i in 0..dimension {
            let w = FACTORIALS[dimension - 1 - i];
            ranks.push(pool.remove(rest / w));
            rest %= w;
        }
        Ok(Self { ranks })
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn dimension(&self) -> usize {
        self.ranks.len()
    }

    /// Lehmer (factorial number system) index in `[0, D!)`.
    pub fn index(&self) -> usize {
        lehmer(&self.ranks)
    }

    /// Window positions (0 = earliest) listed from smallest to largest value.
    pub fn ascending_positions(&self) -> Vec<usize> {
        let d = self.ranks.len();
        self.ranks.iter().rev().map(|&r| d - 1 - r).collect()
    }
}

fn lehmer(ranks: &[usize]) -> usize {
    let d = ranks.len();
    let mut code = 0;
    for i in 0..d {
        let smaller = ranks[i + 1..].iter().filter(|&&r| r < ranks[i]).count();
        code += smaller * FACTORIALS[d - 1 - i];
    }
    code
}

/// Embedding parameters: dimension `D`, delay `τ` and the tie convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Embedding {
    dimension: usize,
    delay: usize,
    ties: TieRule,
}

impl Embedding {
    pub fn new(dimension: usize, delay: usize) -> Result<Self> {
        if dimension < 2 {
            return Err(Error::InvalidInput(format!(
                "embedding dimension must be at least 2, got {dimension}"
            )));
        }
        if dimension > MAX_DIMENSION {
            return Err(Error::UnsupportedDimension(dimension));
        }
        if delay < 1 {
            return Err(Error::InvalidInput(
                "embedding delay must be at least 1".into(),
            ));
        }
        Ok(Self {
            dimension,
            delay,
            ties: TieRule::default(),
        })
    }

    pub fn with_ties(mut self, ties: TieRule) -> Self {
        self.ties = ties;
        self
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn delay(&self) -> usize {
        self.delay
    }

    pub fn ties(&self) -> TieRule {
        self.ties
    }

    /// `M = D!`.
    pub fn alphabet_size(&self) -> usize {
        FACTORIALS[self.dimension]
    }

    /// Shortest series that yields one pattern: `(D-1)τ + 1`.
    pub fn min_length(&self) -> usize {
        (self.dimension - 1) * self.delay + 1
    }

    /// Classifies one window of exactly `D` values given in time order.
    pub fn extract(&self, window: &[f64]) -> Result<OrdinalPattern> {
        if window.len() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                found: window.len(),
            });
        }
        check_finite(window)?;
        let mut ranks = [0usize; MAX_DIMENSION];
        self.ranks_into(window.iter().copied(), &mut ranks);
        Ok(OrdinalPattern {
            ranks: ranks[..self.dimension].to_vec(),
        })
    }

    fn ranks_into(&self, window: impl Iterator<Item = f64>, ranks: &mut [usize; MAX_DIMENSION]) {
        let d = self.dimension;
        let mut vals = [0.0f64; MAX_DIMENSION];
        for (slot, v) in vals.iter_mut().zip(window) {
            *slot = v;
        }
        // insertion sort of window positions, ascending by value
        let mut order = [0usize; MAX_DIMENSION];
        for p in 0..d {
            let mut j = p;
            while j > 0 && self.below(&vals, p, order[j - 1]) {
                order[j] = order[j - 1];
                j -= 1;
            }
            order[j] = p;
        }
        // the k-th smallest occupies chain slot D-1-k; offsets count backwards
        for (k, &pos) in order[..d].iter().enumerate() {
            ranks[d - 1 - k] = d - 1 - pos;
        }
    }

    /// Whether window position `a` must sit strictly below position `b`.
    #[inline]
    fn below(&self, vals: &[f64; MAX_DIMENSION], a: usize, b: usize) -> bool {
        let (va, vb) = (vals[a], vals[b]);
        if va < vb {
            true
        } else if va > vb {
            false
        } else {
            match self.ties {
                TieRule::LaterBelow => a > b,
                TieRule::EarlierBelow => a < b,
            }
        }
    }

    fn code_at(&self, values: &[f64], start: usize) -> usize {
        let mut ranks = [0usize; MAX_DIMENSION];
        let window = (0..self.dimension).map(|k| values[start + k * self.delay]);
        self.ranks_into(window, &mut ranks);
        lehmer(&ranks[..self.dimension])
    }

    /// Lehmer indices of the `N - (D-1)τ` overlapping patterns, in time order.
    pub fn symbolize(&self, values: &[f64]) -> Result<Vec<usize>> {
        self.check_series(values)?;
        let n = values.len() - (self.dimension - 1) * self.delay;
        Ok((0..n).map(|s| self.code_at(values, s)).collect())
    }

    /// Relative frequencies of all `D!` patterns over a series.
    pub fn distribution(&self, values: &[f64]) -> Result<PatternDistribution> {
        self.check_series(values)?;
        let n = values.len() - (self.dimension - 1) * self.delay;
        let mut counts = vec![0u64; self.alphabet_size()];
        for s in 0..n {
            counts[self.code_at(values, s)] += 1;
        }
        Ok(PatternDistribution::from_counts(
            *self,
            counts,
            values.len() < 5 * self.alphabet_size(),
        ))
    }

    fn check_series(&self, values: &[f64]) -> Result<()> {
        if values.len() < self.min_length() {
            return Err(Error::insufficient(self.min_length(), values.len()));
        }
        check_finite(values)
    }
}

fn check_finite(values: &[f64]) -> Result<()> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(i) => Err(Error::InvalidInput(format!(
            "non-finite value at position {i}"
        ))),
        None => Ok(()),
    }
}

/// Ordinal pattern probability distribution `P = {p(π_i)}` over all `D!`
/// patterns, indexed by Lehmer code.
#[derive(Debug, Clone, PartialEq)]
pub struct PatternDistribution {
    embedding: Embedding,
    counts: Vec<u64>,
    probabilities: Vec<f64>,
    sample_count: u64,
    undersampled: bool,
}

impl PatternDistribution {
    fn from_counts(embedding: Embedding, counts: Vec<u64>, undersampled: bool) -> Self {
        let sample_count: u64 = counts.iter().sum();
        let probabilities = if sample_count == 0 {
            vec![0.0; counts.len()]
        } else {
            counts
                .iter()
                .map(|&c| c as f64 / sample_count as f64)
                .collect()
        };
        Self {
            embedding,
            counts,
            probabilities,
            sample_count,
            undersampled,
        }
    }

    pub fn embedding(&self) -> Embedding {
        self.embedding
    }

    pub fn dimension(&self) -> usize {
        self.embedding.dimension
    }

    pub fn delay(&self) -> usize {
        self.embedding.delay
    }

    pub fn alphabet_size(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    /// Number of classified vectors, `N - (D-1)τ`.
    pub fn sample_count(&self) -> u64 {
        self.sample_count
    }

    /// Set when the series is shorter than `5·D!`, too short for the pattern
    /// frequencies to be reliable.
    pub fn undersampled(&self) -> bool {
        self.undersampled
    }

    pub fn probability(&self, pattern: &OrdinalPattern) -> f64 {
        if pattern.dimension() != self.dimension() {
            return 0.0;
        }
        self.probabilities[pattern.index()]
    }
}

/// Classifies one window of `dimension` values given in time order, with the
/// default tie rule.
pub fn extract_pattern(window: &[f64], dimension: usize) -> Result<OrdinalPattern> {
    Embedding::new(dimension, 1)?.extract(window)
}

/// Pattern distribution of a series with the default tie rule.
pub fn pattern_distribution(
    series: &RawSeries,
    dimension: usize,
    delay: usize,
) -> Result<PatternDistribution> {
    Embedding::new(dimension, delay)?
        .distribution(series.values())
        .map_err(|e| e.for_series(series.label()))
}

/// Adds seeded i.i.d. uniform noise on `[-amplitude, amplitude)` to break
/// ties. Off unless requested.
pub fn jitter(values: &[f64], amplitude: f64, seed: u64) -> Result<Vec<f64>> {
    if !(amplitude.is_finite() && amplitude >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "jitter amplitude must be finite and nonnegative, got {amplitude}"
        )));
    }
    let mut rng = Prng::new(seed);
    Ok(values
        .iter()
        .map(|v| v + amplitude * (2.0 * rng.uniform() - 1.0))
        .collect())
}
