//! Seeded synthetic signals used as ground truth for regime discrimination.
//!
//! The random source is xoshiro256++ seeded through SplitMix64
//! (`Xoshiro256PlusPlus::seed_from_u64`). Uniform draws use the top 53 bits:
//! `u = (next_u64() >> 11) · 2^-53`, which lies in `[0, 1)`. Normal increments
//! use the Irwin-Hall approximation `z = Σ_{k=1}^{12} u_k - 6` (mean 0,
//! variance 1). Both transforms are plain IEEE arithmetic with no libm calls,
//! so a seed yields the same bits on every platform.

use rand_core::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::error::{Error, Result};
use crate::series::RawSeries;

/// Transient discarded by default before recording a logistic-map orbit.
pub const DEFAULT_TRANSIENT: usize = 1000;

const TWO_POW_MINUS_53: f64 = 1.0 / (1u64 << 53) as f64;

pub(crate) struct Prng(Xoshiro256PlusPlus);

impl Prng {
    pub(crate) fn new(seed: u64) -> Self {
        Self(Xoshiro256PlusPlus::seed_from_u64(seed))
    }

    pub(crate) fn uniform(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * TWO_POW_MINUS_53
    }

    pub(crate) fn standard_normal(&mut self) -> f64 {
        (0..12).map(|_| self.uniform()).sum::<f64>() - 6.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeneratorKind {
    /// i.i.d. uniform draws on `[0, 1)`.
    WhiteNoise,
    /// Cumulative sum of approximately standard-normal increments.
    RandomWalk,
    /// `x[t+1] = r·x[t]·(1 - x[t])`, recorded after `transient` steps.
    LogisticMap { r: f64, x0: f64, transient: usize },
}

impl GeneratorKind {
    pub fn logistic(r: f64, x0: f64) -> Self {
        GeneratorKind::LogisticMap {
            r,
            x0,
            transient: DEFAULT_TRANSIENT,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GeneratorKind::WhiteNoise => "white_noise",
            GeneratorKind::RandomWalk => "random_walk",
            GeneratorKind::LogisticMap { .. } => "logistic_map",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub length: usize,
    /// Ignored by the logistic map, which is fully determined by `x0`.
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, length: usize, seed: u64) -> Self {
        Self { kind, length, seed }
    }

    pub fn validate(&self) -> Result<()> {
        if self.length == 0 {
            return Err(Error::InvalidInput(
                "series length must be at least 1".into(),
            ));
        }
        if let GeneratorKind::LogisticMap { r, x0, .. } = self.kind {
            if !(r > 0.0 && r <= 4.0) {
                return Err(Error::InvalidInput(format!(
                    "logistic parameter r must lie in (0, 4], got {r}"
                )));
            }
            if !(x0 > 0.0 && x0 < 1.0) {
                return Err(Error::InvalidInput(format!(
                    "logistic initial condition must lie in (0, 1), got {x0}"
                )));
            }
        }
        Ok(())
    }
}

/// Produces the series described by `spec`, labelled with the generator name.
pub fn generate(spec: &GeneratorSpec) -> Result<RawSeries> {
    spec.validate()?;
    let n = spec.length;
    let values = match spec.kind {
        GeneratorKind::WhiteNoise => {
            let mut rng = Prng::new(spec.seed);
            (0..n).map(|_| rng.uniform()).collect()
        }
        GeneratorKind::RandomWalk => {
            let mut rng = Prng::new(spec.seed);
            let mut level = 0.0;
            (0..n)
                .map(|_| {
                    level += rng.standard_normal();
                    level
                })
                .collect()
        }
        GeneratorKind::LogisticMap { r, x0, transient } => logistic_orbit(r, x0, transient, n),
    };
    RawSeries::new(spec.kind.name(), values)
}

fn logistic_orbit(r: f64, x0: f64, transient: usize, n: usize) -> Vec<f64> {
    // Largest double below 1; rounding can otherwise land the orbit on the
    // absorbing points 0 or 1.
    const UPPER: f64 = 1.0 - f64::EPSILON / 2.0;
    let step = |x: f64| (r * x * (1.0 - x)).clamp(f64::MIN_POSITIVE, UPPER);
    let mut x = x0;
    for _ in 0..transient {
        x = step(x);
    }
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(x);
        x = step(x);
    }
    out
}
