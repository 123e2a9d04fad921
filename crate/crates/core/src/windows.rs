//! Sliding-window analysis: quantifiers per window, contiguous period
//! clusters with centroids, and inefficiency trajectories.

use chrono::NaiveDate;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ordinal::{Embedding, TieRule};
use crate::quantifiers::Quantifiers;
use crate::series::RawSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalysisConfig {
    pub dimension: usize,
    pub delay: usize,
    pub window_length: usize,
    pub step: usize,
    pub period_size: usize,
    /// Keep at most this many windows (counted from the start).
    pub max_windows: Option<usize>,
    pub ties: TieRule,
}

impl Default for AnalysisConfig {
    /// `D = 4`, `τ = 1`, windows of 300 points moved by 20, periods of 16.
    fn default() -> Self {
        Self {
            dimension: 4,
            delay: 1,
            window_length: 300,
            step: 20,
            period_size: 16,
            max_windows: None,
            ties: TieRule::default(),
        }
    }
}

impl AnalysisConfig {
    pub fn embedding(&self) -> Result<Embedding> {
        Ok(Embedding::new(self.dimension, self.delay)?.with_ties(self.ties))
    }

    pub fn validate(&self) -> Result<Embedding> {
        let embedding = self.embedding()?;
        if self.window_length < embedding.min_length() {
            return Err(Error::InvalidInput(format!(
                "window length {} is shorter than one pattern ({} values)",
                self.window_length,
                embedding.min_length()
            )));
        }
        if self.step < 1 {
            return Err(Error::InvalidInput("step must be at least 1".into()));
        }
        if self.period_size < 1 {
            return Err(Error::InvalidInput("period size must be at least 1".into()));
        }
        if self.max_windows == Some(0) {
            return Err(Error::InvalidInput("max windows must be at least 1".into()));
        }
        Ok(embedding)
    }

    /// `floor((N - W)/δ) + 1`, capped by `max_windows`; zero when `N < W`.
    pub fn window_count(&self, n: usize) -> usize {
        if n < self.window_length || self.step == 0 {
            return 0;
        }
        let full = (n - self.window_length) / self.step + 1;
        self.max_windows.map_or(full, |cap| full.min(cap))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Serial,
    #[default]
    Parallel,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WindowResult {
    pub index: usize,
    pub start_offset: usize,
    /// Exclusive.
    pub end_offset: usize,
    pub start_date: Option<NaiveDate>,
    /// Date of the last observation inside the window.
    pub end_date: Option<NaiveDate>,
    pub quantifiers: Quantifiers,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodCluster {
    /// 1-based.
    pub period_id: usize,
    pub windows: std::ops::Range<usize>,
    pub centroid_entropy: f64,
    pub centroid_complexity: f64,
}

impl PeriodCluster {
    pub fn size(&self) -> usize {
        self.windows.len()
    }
}

/// Quantifiers of the windows at offsets `0, δ, 2δ, …`; a trailing stretch
/// shorter than one window is ignored.
pub fn sliding_analysis(series: &RawSeries, cfg: &AnalysisConfig) -> Result<Vec<WindowResult>> {
    sliding_analysis_with(series, cfg, Execution::default())
}

pub fn sliding_analysis_with(
    series: &RawSeries,
    cfg: &AnalysisConfig,
    execution: Execution,
) -> Result<Vec<WindowResult>> {
    let embedding = cfg.validate()?;
    let n = series.len();
    if n < cfg.window_length {
        return Err(Error::InsufficientData {
            label: Some(series.label().to_string()),
            needed: cfg.window_length,
            available: n,
        });
    }
    let count = cfg.window_count(n);
    let one = |index: usize| window_at(series, cfg, &embedding, index);
    match execution {
        Execution::Serial => (0..count).map(one).collect(),
        Execution::Parallel => (0..count).into_par_iter().map(one).collect(),
    }
}

fn window_at(
    series: &RawSeries,
    cfg: &AnalysisConfig,
    embedding: &Embedding,
    index: usize,
) -> Result<WindowResult> {
    let start = index * cfg.step;
    let end = start + cfg.window_length;
    let dist = embedding
        .distribution(&series.values()[start..end])
        .map_err(|e| e.for_series(series.label()))?;
    let dates = series.timestamps();
    Ok(WindowResult {
        index,
        start_offset: start,
        end_offset: end,
        start_date: dates.map(|d| d[start]),
        end_date: dates.map(|d| d[end - 1]),
        quantifiers: Quantifiers::from_distribution(&dist)?,
    })
}

/// Consecutive blocks of `period_size` windows; a remainder shorter than
/// `period_size` is folded into the last block.
pub fn group_periods(results: &[WindowResult], period_size: usize) -> Result<Vec<PeriodCluster>> {
    if results.is_empty() {
        return Err(Error::InvalidInput("no windows to group".into()));
    }
    if period_size < 1 {
        return Err(Error::InvalidInput("period size must be at least 1".into()));
    }
    let n = results.len();
    let periods = (n / period_size).max(1);
    Ok((0..periods)
        .map(|k| {
            let start = k * period_size;
            let end = if k + 1 == periods {
                n
            } else {
                start + period_size
            };
            let members = &results[start..end];
            let len = members.len() as f64;
            PeriodCluster {
                period_id: k + 1,
                windows: start..end,
                centroid_entropy: members.iter().map(|w| w.quantifiers.entropy).sum::<f64>() / len,
                centroid_complexity: members
                    .iter()
                    .map(|w| w.quantifiers.complexity)
                    .sum::<f64>()
                    / len,
            }
        })
        .collect())
}

pub fn inefficiency_trajectory(results: &[WindowResult]) -> Vec<(usize, f64)> {
    results
        .iter()
        .map(|w| (w.index, w.quantifiers.inefficiency))
        .collect()
}
