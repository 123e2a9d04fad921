//! Record layouts shared by the delimited and JSON outputs.

use serde::Serialize;

/// Significant digits of every numeric output field.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Formats like C's `%.12g`: 12 significant digits, trailing zeros trimmed,
/// exponent notation outside `1e-5 ..= 1e12`.
pub fn sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent notation");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= SIGNIFICANT_DIGITS as i32 {
        let mantissa = trim_zeros(mantissa);
        return format!("{mantissa}e{exp}");
    }
    let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// The value a consumer recovers from the printed text.
pub fn rounded(x: f64) -> f64 {
    sig(x).parse().expect("formatted number parses")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WindowRecord {
    pub series_label: String,
    pub window_index: usize,
    pub start_date: Option<String>,
    pub end_date: Option<String>,
    #[serde(serialize_with = "as_rounded")]
    pub entropy: f64,
    #[serde(serialize_with = "as_rounded")]
    pub complexity: f64,
    #[serde(serialize_with = "as_rounded")]
    pub inefficiency: f64,
}

impl WindowRecord {
    pub const HEADER: &'static str =
        "series_label,window_index,start_date,end_date,entropy,complexity,inefficiency";

    pub fn row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.series_label,
            self.window_index,
            self.start_date.as_deref().unwrap_or(""),
            self.end_date.as_deref().unwrap_or(""),
            sig(self.entropy),
            sig(self.complexity),
            sig(self.inefficiency)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodRecord {
    pub series_label: String,
    pub period_id: usize,
    pub size: usize,
    pub first_window: usize,
    pub last_window: usize,
    #[serde(serialize_with = "as_rounded")]
    pub centroid_entropy: f64,
    #[serde(serialize_with = "as_rounded")]
    pub centroid_complexity: f64,
}

impl PeriodRecord {
    pub const HEADER: &'static str =
        "series_label,period_id,size,first_window,last_window,centroid_entropy,centroid_complexity";

    pub fn row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.series_label,
            self.period_id,
            self.size,
            self.first_window,
            self.last_window,
            sig(self.centroid_entropy),
            sig(self.centroid_complexity)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundRecord {
    pub kind: &'static str,
    #[serde(serialize_with = "as_rounded")]
    pub entropy: f64,
    #[serde(serialize_with = "as_rounded")]
    pub complexity: f64,
}

impl BoundRecord {
    pub const HEADER: &'static str = "kind,entropy,complexity";

    pub fn row(&self) -> String {
        format!(
            "{},{},{}",
            self.kind,
            sig(self.entropy),
            sig(self.complexity)
        )
    }
}

fn as_rounded<S: serde::Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(rounded(*x))
}

/// A header line followed by one line per record, newline-terminated.
pub fn table<T>(header: &str, rows: &[T], row: impl Fn(&T) -> String) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(header);
    out.push('\n');
    for r in rows {
        out.push_str(&row(r));
        out.push('\n');
    }
    out
}
