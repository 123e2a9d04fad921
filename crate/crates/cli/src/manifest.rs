use serde::Serialize;

/// Everything needed to reproduce an `analyze` run on the same input.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub input: InputEcho,
    pub analysis: AnalysisEcho,
    pub output: &'static str,
    pub series: Vec<SeriesSummary>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InputEcho {
    pub path: String,
    pub sha256: String,
    pub layout: String,
    pub date_format: String,
    pub delimiter: String,
    pub missing_policy: String,
    pub difference: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisEcho {
    pub dimension: usize,
    pub delay: usize,
    pub window_length: usize,
    pub step: usize,
    pub period_size: usize,
    pub max_windows: Option<usize>,
    pub ties: String,
    pub jitter: Option<f64>,
    pub jitter_seed: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SeriesSummary {
    pub label: String,
    pub length: usize,
    pub first_date: Option<String>,
    pub last_date: Option<String>,
    pub windows: usize,
    pub periods: usize,
    /// Window shorter than five times the number of patterns.
    pub undersampled: bool,
}
