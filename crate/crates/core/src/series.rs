use chrono::NaiveDate;

use crate::error::{Error, Result};

/// An ordered, labelled sequence of finite observations with optional dates.
#[derive(Debug, Clone, PartialEq)]
pub struct RawSeries {
    label: String,
    values: Vec<f64>,
    timestamps: Option<Vec<NaiveDate>>,
}

impl RawSeries {
    pub fn new(label: impl Into<String>, values: Vec<f64>) -> Result<Self> {
        let label = label.into();
        check_values(&label, &values)?;
        Ok(Self {
            label,
            values,
            timestamps: None,
        })
    }

    pub fn with_timestamps(
        label: impl Into<String>,
        values: Vec<f64>,
        timestamps: Vec<NaiveDate>,
    ) -> Result<Self> {
        let label = label.into();
        check_values(&label, &values)?;
        if timestamps.len() != values.len() {
            return Err(Error::InvalidInput(format!(
                "series '{label}' has {} values but {} timestamps",
                values.len(),
                timestamps.len()
            )));
        }
        if let Some(w) = timestamps.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput(format!(
                "timestamps of series '{label}' are not strictly increasing at {}",
                w[1]
            )));
        }
        Ok(Self {
            label,
            values,
            timestamps: Some(timestamps),
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn timestamps(&self) -> Option<&[NaiveDate]> {
        self.timestamps.as_deref()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Replaces values by first differences `x[t] - x[t-1]`; the result is one
    /// observation shorter and keeps the timestamps of the later endpoint.
    pub fn first_difference(&self) -> Result<Self> {
        if self.values.len() < 2 {
            return Err(Error::InsufficientData {
                label: Some(self.label.clone()),
                needed: 2,
                available: self.values.len(),
            });
        }
        let values = self.values.windows(2).map(|w| w[1] - w[0]).collect();
        Ok(Self {
            label: self.label.clone(),
            values,
            timestamps: self.timestamps.as_ref().map(|t| t[1..].to_vec()),
        })
    }
}

fn check_values(label: &str, values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::InsufficientData {
            label: Some(label.to_string()),
            needed: 1,
            available: 0,
        });
    }
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "series '{label}' has a non-finite value at position {i}"
        )));
    }
    Ok(())
}
