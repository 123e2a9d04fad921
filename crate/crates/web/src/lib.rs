//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every exported function returns a JSON string. The plain Rust functions
//! behind them are public so they can be tested natively.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use cecp_core::bounds::{lower_bound, upper_bound, BoundCurve};
use cecp_core::ordinal::{factorial, Embedding, OrdinalPattern};
use cecp_core::quantifiers::Quantifiers;
use cecp_core::synth::{generate, GeneratorKind, GeneratorSpec};
use cecp_core::windows::{sliding_analysis, AnalysisConfig};
use cecp_core::{Error, RawSeries, Result};

/// Bound curves drawn behind trajectories.
const PLOT_RESOLUTION: usize = 300;

fn curve_points(curve: &BoundCurve) -> Value {
    curve.points.iter().map(|&(h, c)| json!([h, c])).collect()
}

pub fn bounds(alphabet_size: usize, resolution: usize) -> Result<Value> {
    Ok(json!({
        "alphabet_size": alphabet_size,
        "lower": curve_points(&lower_bound(alphabet_size, resolution)?),
        "upper": curve_points(&upper_bound(alphabet_size, resolution)?),
    }))
}

pub fn synthetic(kind: &str, length: usize, seed: u64, r: f64) -> Result<RawSeries> {
    let kind = match kind {
        "white-noise" => GeneratorKind::WhiteNoise,
        "random-walk" => GeneratorKind::RandomWalk,
        "logistic-map" => GeneratorKind::logistic(r, 0.3),
        other => return Err(Error::InvalidInput(format!("unknown generator '{other}'"))),
    };
    generate(&GeneratorSpec::new(kind, length, seed))
}

/// Window trajectory of a synthetic series plus the bounds for its alphabet.
pub fn trajectory(
    kind: &str,
    length: usize,
    seed: u64,
    r: f64,
    dimension: usize,
    window_length: usize,
    step: usize,
) -> Result<Value> {
    let series = synthetic(kind, length, seed, r)?;
    let cfg = AnalysisConfig {
        dimension,
        window_length,
        step,
        ..AnalysisConfig::default()
    };
    let windows = sliding_analysis(&series, &cfg)?;
    let points: Vec<Value> = windows
        .iter()
        .map(|w| {
            let q = &w.quantifiers;
            json!({"start": w.start_offset, "entropy": q.entropy, "complexity": q.complexity, "inefficiency": q.inefficiency})
        })
        .collect();
    let mut out = bounds(factorial(dimension)?, PLOT_RESOLUTION)?;
    out["windows"] = Value::Array(points);
    out["values"] = json!(series.values().iter().take(500).collect::<Vec<_>>());
    Ok(out)
}

/// Ordinal-pattern histogram of a whole synthetic series.
pub fn histogram(kind: &str, length: usize, seed: u64, r: f64, dimension: usize) -> Result<Value> {
    let series = synthetic(kind, length, seed, r)?;
    let dist = Embedding::new(dimension, 1)?.distribution(series.values())?;
    let q = Quantifiers::from_distribution(&dist)?;
    let labels: Vec<String> = (0..dist.alphabet_size())
        .map(|i| {
            let p = OrdinalPattern::from_index(i, dimension).expect("index below D!");
            p.ranks().iter().map(usize::to_string).collect()
        })
        .collect();
    Ok(json!({
        "labels": labels,
        "probabilities": dist.probabilities(),
        "sample_count": dist.sample_count(),
        "undersampled": dist.undersampled(),
        "entropy": q.entropy,
        "complexity": q.complexity,
        "inefficiency": q.inefficiency,
    }))
}

fn to_js(v: Result<Value>) -> std::result::Result<String, JsError> {
    v.map(|v| v.to_string())
        .map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen(js_name = bounds)]
pub fn bounds_js(alphabet_size: usize, resolution: usize) -> std::result::Result<String, JsError> {
    to_js(bounds(alphabet_size, resolution))
}

#[wasm_bindgen(js_name = trajectory)]
#[allow(clippy::too_many_arguments)]
pub fn trajectory_js(
    kind: &str,
    length: usize,
    seed: u64,
    r: f64,
    dimension: usize,
    window_length: usize,
    step: usize,
) -> std::result::Result<String, JsError> {
    to_js(trajectory(
        kind,
        length,
        seed,
        r,
        dimension,
        window_length,
        step,
    ))
}

#[wasm_bindgen(js_name = histogram)]
pub fn histogram_js(
    kind: &str,
    length: usize,
    seed: u64,
    r: f64,
    dimension: usize,
) -> std::result::Result<String, JsError> {
    to_js(histogram(kind, length, seed, r, dimension))
}
