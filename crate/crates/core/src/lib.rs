//! Ordinal-pattern (Bandt-Pompe) analysis of time series.
//!
//! Series are symbolized into ordinal patterns ([`ordinal`]); the pattern
//! distribution yields normalized permutation entropy, Jensen-Shannon
//! statistical complexity and an inefficiency score ([`quantifiers`]). Points
//! live in the complexity-entropy causality plane, whose attainable region
//! is delimited by [`bounds`]. [`windows`] runs the analysis over sliding
//! windows and groups windows into periods; [`synth`] and [`ingest`] supply
//! data.
//!
//! ```
//! use cecp_core::{ordinal::Embedding, quantifiers::Quantifiers};
//!
//! let values: Vec<f64> = (0..500).map(|i| ((i * 7919) % 263) as f64).collect();
//! let dist = Embedding::new(4, 1)?.distribution(&values)?;
//! let q = Quantifiers::from_distribution(&dist)?;
//! assert!(q.entropy <= 1.0 && q.complexity >= 0.0);
//! # Ok::<(), cecp_core::Error>(())
//! ```

pub mod bounds;
mod error;
pub mod ingest;
pub mod ordinal;
pub mod quantifiers;
mod series;
pub mod synth;
pub mod windows;

pub use error::{Error, Result};
pub use series::RawSeries;
