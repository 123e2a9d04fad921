//! Delimited-text rate panels.
//!
//! Two layouts are understood, both with a mandatory header row:
//!
//! * **wide**: `date,<label 1>,<label 2>,…`, one row per date;
//! * **long**: `date,label,value`, one row per observation.
//!
//! Empty fields, `NA` and `NaN` (any case) mark missing observations. Rows
//! may come in any order; each series is sorted by date.

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use chrono::NaiveDate;

use crate::error::{Error, Result};
use crate::series::RawSeries;

pub const DEFAULT_DATE_FORMAT: &str = "%Y-%m-%d";

type Observations = BTreeMap<String, Vec<(NaiveDate, Option<f64>)>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Layout {
    Long,
    #[default]
    Wide,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MissingPolicy {
    /// Remove the observation from that series.
    #[default]
    Drop,
    /// Repeat the last observed value; a missing first value is an error.
    ForwardFill,
}

macro_rules! text_enum {
    ($ty:ty, $what:literal, $($variant:path => $name:literal),+) => {
        impl std::fmt::Display for $ty {
            fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                f.write_str(match self { $($variant => $name),+ })
            }
        }

        impl std::str::FromStr for $ty {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($name => Ok($variant),)+
                    other => Err(Error::InvalidInput(format!(concat!("unknown ", $what, " '{}'"), other))),
                }
            }
        }
    };
}

text_enum!(Layout, "layout", Layout::Long => "long", Layout::Wide => "wide");
text_enum!(MissingPolicy, "missing-value policy", MissingPolicy::Drop => "drop", MissingPolicy::ForwardFill => "ffill");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PanelSource {
    pub path: PathBuf,
    pub layout: Layout,
    pub date_format: String,
    pub delimiter: u8,
    pub missing: MissingPolicy,
    /// Replace every series by its first differences.
    pub difference: bool,
}

impl PanelSource {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Self {
            path: path.into(),
            layout: Layout::default(),
            date_format: DEFAULT_DATE_FORMAT.to_string(),
            delimiter: b',',
            missing: MissingPolicy::default(),
            difference: false,
        }
    }

    /// Parses panel text with these settings; `path` is not consulted.
    pub fn parse<R: Read>(&self, reader: R) -> Result<Vec<RawSeries>> {
        let mut csv = csv::ReaderBuilder::new()
            .delimiter(self.delimiter)
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let header = csv.headers().map_err(csv_error)?.clone();
        if header.is_empty() || (header.len() == 1 && header[0].is_empty()) {
            return Err(Error::Parse {
                line: 1,
                message: "missing header row".into(),
            });
        }
        let raw = match self.layout {
            Layout::Wide => self.collect_wide(&header, &mut csv)?,
            Layout::Long => self.collect_long(&header, &mut csv)?,
        };
        raw.into_iter()
            .map(|(label, obs)| self.finish(label, obs))
            .collect()
    }

    fn collect_wide<R: Read>(
        &self,
        header: &csv::StringRecord,
        csv: &mut csv::Reader<R>,
    ) -> Result<Observations> {
        if header.len() < 2 {
            return Err(Error::Parse {
                line: 1,
                message: "wide layout needs a date column and at least one series column".into(),
            });
        }
        let mut out: BTreeMap<String, Vec<_>> = BTreeMap::new();
        let labels: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
        for label in &labels {
            if label.is_empty() {
                return Err(Error::Parse {
                    line: 1,
                    message: "empty series label in header".into(),
                });
            }
            if out.insert(label.clone(), Vec::new()).is_some() {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        for record in csv.records() {
            let record = record.map_err(csv_error)?;
            let line = line_of(&record);
            let date = self.date(&record[0], line)?;
            for (label, cell) in labels.iter().zip(record.iter().skip(1)) {
                let value = value(cell, line)?;
                out.get_mut(label)
                    .expect("label registered")
                    .push((date, value));
            }
        }
        Ok(out)
    }

    fn collect_long<R: Read>(
        &self,
        header: &csv::StringRecord,
        csv: &mut csv::Reader<R>,
    ) -> Result<Observations> {
        if header.len() != 3 {
            return Err(Error::Parse {
                line: 1,
                message: format!(
                    "long layout needs 3 columns (date,label,value), found {}",
                    header.len()
                ),
            });
        }
        let mut out: BTreeMap<String, Vec<_>> = BTreeMap::new();
        for record in csv.records() {
            let record = record.map_err(csv_error)?;
            let line = line_of(&record);
            let date = self.date(&record[0], line)?;
            if record[1].is_empty() {
                return Err(Error::Parse {
                    line,
                    message: "empty series label".into(),
                });
            }
            let value = value(&record[2], line)?;
            out.entry(record[1].to_string())
                .or_default()
                .push((date, value));
        }
        Ok(out)
    }

    fn date(&self, field: &str, line: u64) -> Result<NaiveDate> {
        NaiveDate::parse_from_str(field, &self.date_format).map_err(|e| Error::Parse {
            line,
            message: format!(
                "cannot parse date '{field}' with format '{}': {e}",
                self.date_format
            ),
        })
    }

    fn finish(&self, label: String, mut obs: Vec<(NaiveDate, Option<f64>)>) -> Result<RawSeries> {
        obs.sort_by_key(|o| o.0);
        if let Some(w) = obs.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::DuplicateDate {
                label,
                date: w[0].0.format(&self.date_format).to_string(),
            });
        }
        let mut dates = Vec::with_capacity(obs.len());
        let mut values = Vec::with_capacity(obs.len());
        let mut last = None;
        for (date, v) in obs {
            let v = match (v, self.missing) {
                (Some(v), _) => v,
                (None, MissingPolicy::Drop) => continue,
                (None, MissingPolicy::ForwardFill) => match last {
                    Some(prev) => prev,
                    None => return Err(Error::MissingLeadingValue(label)),
                },
            };
            last = Some(v);
            dates.push(date);
            values.push(v);
        }
        if values.is_empty() {
            return Err(Error::InsufficientData {
                label: Some(label),
                needed: 1,
                available: 0,
            });
        }
        let series = RawSeries::with_timestamps(label, values, dates)?;
        if self.difference {
            series.first_difference()
        } else {
            Ok(series)
        }
    }
}

fn line_of(record: &csv::StringRecord) -> u64 {
    record.position().map_or(0, |p| p.line())
}

fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line());
    if e.is_io_error() {
        if let csv::ErrorKind::Io(io) = e.into_kind() {
            return Error::Io(io);
        }
        unreachable!("is_io_error implies an Io kind");
    }
    Error::Parse {
        line,
        message: e.to_string(),
    }
}

fn value(cell: &str, line: u64) -> Result<Option<f64>> {
    if cell.is_empty() || cell.eq_ignore_ascii_case("na") || cell.eq_ignore_ascii_case("nan") {
        return Ok(None);
    }
    match cell.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(Some(v)),
        _ => Err(Error::Parse {
            line,
            message: format!("'{cell}' is not a finite number"),
        }),
    }
}

/// Reads every series of the panel at `src.path`, ordered by label.
pub fn load_panel(src: &PanelSource) -> Result<Vec<RawSeries>> {
    let file = std::fs::File::open(&src.path)?;
    src.parse(std::io::BufReader::new(file))
}

/// Writes dated series as a wide panel over the union of their dates, leaving
/// fields empty where a series has no observation. Values use the shortest
/// representation that parses back to the same double.
pub fn write_panel<W: Write>(
    series: &[RawSeries],
    writer: W,
    date_format: &str,
    delimiter: u8,
) -> Result<()> {
    let mut columns = Vec::with_capacity(series.len());
    for s in series {
        let dates = s.timestamps().ok_or_else(|| {
            Error::InvalidInput(format!("series '{}' has no dates to write", s.label()))
        })?;
        columns.push(
            dates
                .iter()
                .copied()
                .zip(s.values().iter().copied())
                .collect::<BTreeMap<_, _>>(),
        );
    }
    let mut all_dates: Vec<NaiveDate> = columns.iter().flat_map(|c| c.keys().copied()).collect();
    all_dates.sort_unstable();
    all_dates.dedup();

    let mut csv = csv::WriterBuilder::new()
        .delimiter(delimiter)
        .from_writer(writer);
    let header = std::iter::once("date").chain(series.iter().map(RawSeries::label));
    csv.write_record(header).map_err(csv_error)?;
    for date in all_dates {
        let mut row = vec![date.format(date_format).to_string()];
        row.extend(
            columns
                .iter()
                .map(|c| c.get(&date).map_or(String::new(), |v| v.to_string())),
        );
        csv.write_record(&row).map_err(csv_error)?;
    }
    csv.flush()?;
    Ok(())
}

pub fn write_panel_file(
    series: &[RawSeries],
    path: &Path,
    date_format: &str,
    delimiter: u8,
) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_panel(
        series,
        std::io::BufWriter::new(file),
        date_format,
        delimiter,
    )
}
