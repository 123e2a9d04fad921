//! Minimum- and maximum-complexity envelopes of the complexity-entropy plane
//! for an alphabet of `M` states, traced by sweeping one-parameter families
//! of distributions.
//!
//! * lower: `p_1 = p`, `p_2 = … = p_M = (1 - p)/(M - 1)` for `p ∈ [1/M, 1]`;
//! * upper: for each `n ∈ {0, …, M-2}`, `n` states at zero, one state at
//!   `p ∈ [0, 1/(M-n)]` and the remaining `M-n-1` sharing `1 - p` equally.
//!   The `n`-th family spans `H ∈ [ln(M-n-1)/ln M, ln(M-n)/ln M]`, so the
//!   families tile `[0, 1]` and the envelope is their sorted union.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quantifiers::Quantifiers;

/// Samples per family member.
pub const DEFAULT_RESOLUTION: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Lower,
    Upper,
}

impl BoundKind {
    pub fn name(&self) -> &'static str {
        match self {
            BoundKind::Lower => "lower",
            BoundKind::Upper => "upper",
        }
    }
}

/// Sampled `(entropy, complexity)` locus, sorted by entropy.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundCurve {
    pub alphabet_size: usize,
    pub kind: BoundKind,
    pub points: Vec<(f64, f64)>,
}

impl BoundCurve {
    /// Linear interpolation of complexity at `entropy`; clamps outside the
    /// sampled range.
    pub fn interpolate(&self, entropy: f64) -> f64 {
        let pts = &self.points;
        let i = pts.partition_point(|&(h, _)| h < entropy);
        if i == 0 {
            return pts[0].1;
        }
        if i == pts.len() {
            return pts[pts.len() - 1].1;
        }
        let (h0, c0) = pts[i - 1];
        let (h1, c1) = pts[i];
        if h1 == h0 {
            return c0.max(c1);
        }
        c0 + (c1 - c0) * (entropy - h0) / (h1 - h0)
    }
}

fn check(m: usize, resolution: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::InvalidInput(format!(
            "alphabet size must be at least 2, got {m}"
        )));
    }
    if resolution < 2 {
        return Err(Error::InvalidInput(format!(
            "resolution must be at least 2, got {resolution}"
        )));
    }
    Ok(())
}

fn point(p: &[f64]) -> (f64, f64) {
    let q = Quantifiers::from_probabilities(p).expect("family members are valid distributions");
    (q.entropy, q.complexity)
}

/// `resolution` samples of `[a, b]`, including both endpoints, quadratically
/// crowded towards `a`. Entropy has unbounded slope where a family parameter
/// approaches a zero probability; the crowding keeps the sampled curve
/// dense in `H` there.
fn sweep(a: f64, b: f64, resolution: usize) -> impl Iterator<Item = f64> {
    let last = resolution - 1;
    (0..resolution).map(move |k| {
        if k == last {
            b
        } else {
            let t = k as f64 / last as f64;
            a + (b - a) * t * t
        }
    })
}

/// Distribution of the minimum-complexity family at parameter `p`.
pub fn lower_family(m: usize, p: f64) -> Vec<f64> {
    let mut dist = vec![(1.0 - p) / (m - 1) as f64; m];
    dist[0] = p;
    dist
}

/// Distribution of the `n`-th maximum-complexity family at parameter `p`.
pub fn upper_family(m: usize, n: usize, p: f64) -> Vec<f64> {
    let rest = m - n - 1;
    let mut dist = vec![0.0; m];
    dist[n] = p;
    for x in &mut dist[n + 1..] {
        *x = (1.0 - p) / rest as f64;
    }
    dist
}

pub fn lower_bound(m: usize, resolution: usize) -> Result<BoundCurve> {
    check(m, resolution)?;
    // sweep 1 - p so the samples crowd towards the delta end p = 1
    let mut points: Vec<(f64, f64)> = sweep(0.0, 1.0 - 1.0 / m as f64, resolution)
        .map(|q| point(&lower_family(m, 1.0 - q)))
        .collect();
    sort_and_merge(&mut points);
    Ok(BoundCurve {
        alphabet_size: m,
        kind: BoundKind::Lower,
        points,
    })
}

pub fn upper_bound(m: usize, resolution: usize) -> Result<BoundCurve> {
    check(m, resolution)?;
    let mut points: Vec<(f64, f64)> = (0..=m - 2)
        .into_par_iter()
        .flat_map_iter(|n| {
            sweep(0.0, 1.0 / (m - n) as f64, resolution).map(move |p| point(&upper_family(m, n, p)))
        })
        .collect();
    sort_and_merge(&mut points);
    Ok(BoundCurve {
        alphabet_size: m,
        kind: BoundKind::Upper,
        points,
    })
}

/// Sorts by entropy and collapses equal entropies onto the larger complexity.
fn sort_and_merge(points: &mut Vec<(f64, f64)>) {
    points.sort_by(|a, b| a.0.total_cmp(&b.0).then(b.1.total_cmp(&a.1)));
    points.dedup_by(|later, earlier| later.0 == earlier.0);
}
