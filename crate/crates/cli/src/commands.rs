use std::io::Write;
use std::path::Path;

use chrono::Days;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use cecp_core::bounds::{lower_bound, upper_bound, BoundCurve};
use cecp_core::ingest::{self, PanelSource};
use cecp_core::ordinal::{factorial, jitter};
use cecp_core::synth::{generate as synthesize, GeneratorKind, GeneratorSpec};
use cecp_core::windows::{group_periods, sliding_analysis_with, AnalysisConfig, Execution};
use cecp_core::RawSeries;

use crate::format::{table, BoundRecord, PeriodRecord, WindowRecord};
use crate::manifest::{AnalysisEcho, InputEcho, RunManifest, SeriesSummary};
use crate::{AnalyzeArgs, BoundsArgs, CliError, ExitCode, GenerateArgs, KindArg, OutputFormat};

/// Result of `analyze` before serialization.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub windows: Vec<WindowRecord>,
    pub periods: Vec<PeriodRecord>,
    pub manifest: RunManifest,
}

impl AnalyzeArgs {
    pub fn config(&self) -> AnalysisConfig {
        AnalysisConfig {
            dimension: self.dimension,
            delay: self.delay,
            window_length: self.window_length,
            step: self.step,
            period_size: self.period_size,
            max_windows: self.max_windows,
            ties: self.ties.into(),
        }
    }

    pub fn source(&self) -> PanelSource {
        PanelSource {
            path: self.input.clone(),
            layout: self.layout.into(),
            date_format: self.date_format.clone(),
            delimiter: self.delimiter,
            missing: self.policy.into(),
            difference: self.diff,
        }
    }
}

/// Loads the panel and computes every record without writing anything.
pub fn run_analysis(args: &AnalyzeArgs) -> Result<Analysis, CliError> {
    let cfg = args.config();
    cfg.validate().map_err(CliError::from_core)?;
    if let Some(a) = args.jitter {
        jitter(&[], a, args.seed).map_err(CliError::from_core)?;
    }
    let src = args.source();
    let bytes = std::fs::read(&src.path).map_err(|e| CliError {
        code: ExitCode::Input,
        message: format!("cannot read {}: {e}", src.path.display()),
    })?;
    let panel = src.parse(&bytes[..]).map_err(CliError::from_core)?;

    let execution = if args.serial {
        Execution::Serial
    } else {
        Execution::Parallel
    };
    let analyse = |s: &RawSeries| analyse_series(s, args, &cfg, execution);
    let per_series: Vec<_> = match execution {
        Execution::Serial => panel.iter().map(analyse).collect(),
        Execution::Parallel => panel.par_iter().map(analyse).collect(),
    };

    let undersampled = cfg.window_length < 5 * factorial(cfg.dimension).expect("validated");
    let mut windows = Vec::new();
    let mut periods = Vec::new();
    let mut summaries = Vec::with_capacity(panel.len());
    for (series, result) in panel.iter().zip(per_series) {
        let (w, p) = result?;
        let dates = series.timestamps();
        summaries.push(SeriesSummary {
            label: series.label().to_string(),
            length: series.len(),
            first_date: dates.map(|d| d[0].format(&src.date_format).to_string()),
            last_date: dates.map(|d| d[d.len() - 1].format(&src.date_format).to_string()),
            windows: w.len(),
            periods: p.len(),
            undersampled,
        });
        windows.extend(w);
        periods.extend(p);
    }

    let manifest = RunManifest {
        tool: "cecp",
        version: env!("CARGO_PKG_VERSION"),
        input: InputEcho {
            path: src.path.display().to_string(),
            sha256: hex::encode(Sha256::digest(&bytes)),
            layout: src.layout.to_string(),
            date_format: src.date_format.clone(),
            delimiter: (src.delimiter as char).to_string(),
            missing_policy: src.missing.to_string(),
            difference: src.difference,
        },
        analysis: AnalysisEcho {
            dimension: cfg.dimension,
            delay: cfg.delay,
            window_length: cfg.window_length,
            step: cfg.step,
            period_size: cfg.period_size,
            max_windows: cfg.max_windows,
            ties: cfg.ties.to_string(),
            jitter: args.jitter,
            jitter_seed: args.jitter.map(|_| args.seed),
        },
        output: match args.output {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        },
        series: summaries,
    };
    Ok(Analysis {
        windows,
        periods,
        manifest,
    })
}

fn analyse_series(
    series: &RawSeries,
    args: &AnalyzeArgs,
    cfg: &AnalysisConfig,
    execution: Execution,
) -> Result<(Vec<WindowRecord>, Vec<PeriodRecord>), CliError> {
    let jittered;
    let series = match args.jitter {
        Some(a) => {
            let values = jitter(series.values(), a, args.seed).map_err(CliError::from_core)?;
            jittered = match series.timestamps() {
                Some(t) => RawSeries::with_timestamps(series.label(), values, t.to_vec()),
                None => RawSeries::new(series.label(), values),
            }
            .map_err(CliError::from_core)?;
            &jittered
        }
        None => series,
    };
    let results = sliding_analysis_with(series, cfg, execution).map_err(CliError::from_core)?;
    let clusters = group_periods(&results, cfg.period_size).map_err(CliError::from_core)?;
    let date = |d: Option<chrono::NaiveDate>| d.map(|d| d.format(&args.date_format).to_string());
    let label = series.label();
    let windows = results
        .iter()
        .map(|w| WindowRecord {
            series_label: label.to_string(),
            window_index: w.index,
            start_date: date(w.start_date),
            end_date: date(w.end_date),
            entropy: w.quantifiers.entropy,
            complexity: w.quantifiers.complexity,
            inefficiency: w.quantifiers.inefficiency,
        })
        .collect();
    let periods = clusters
        .iter()
        .map(|p| PeriodRecord {
            series_label: label.to_string(),
            period_id: p.period_id,
            size: p.size(),
            first_window: p.windows.start,
            last_window: p.windows.end - 1,
            centroid_entropy: p.centroid_entropy,
            centroid_complexity: p.centroid_complexity,
        })
        .collect();
    Ok((windows, periods))
}

/// Serialized outputs as `(file name, contents)` pairs.
pub fn render(analysis: &Analysis, format: OutputFormat) -> Vec<(&'static str, String)> {
    let manifest = json(&analysis.manifest);
    match format {
        OutputFormat::Csv => vec![
            (
                "windows.csv",
                table(WindowRecord::HEADER, &analysis.windows, WindowRecord::row),
            ),
            (
                "periods.csv",
                table(PeriodRecord::HEADER, &analysis.periods, PeriodRecord::row),
            ),
            ("manifest.json", manifest),
        ],
        OutputFormat::Json => vec![
            ("windows.json", json(&analysis.windows)),
            ("periods.json", json(&analysis.periods)),
            ("manifest.json", manifest),
        ],
    }
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("records serialize");
    s.push('\n');
    s
}

pub fn analyze(args: &AnalyzeArgs) -> Result<(), CliError> {
    let analysis = run_analysis(args)?;
    if analysis.manifest.series.iter().any(|s| s.undersampled) {
        eprintln!(
            "warning: window length {} is below 5·{}! = {}; pattern frequencies may be unreliable",
            args.window_length,
            args.dimension,
            5 * factorial(args.dimension).unwrap_or(0)
        );
    }
    match &args.out_dir {
        Some(dir) => {
            std::fs::create_dir_all(dir).map_err(|e| CliError::output(dir, e))?;
            for (name, contents) in render(&analysis, args.output) {
                let path = dir.join(name);
                std::fs::write(&path, contents).map_err(|e| CliError::output(&path, e))?;
            }
        }
        None => {
            let text = match args.output {
                OutputFormat::Csv => {
                    let files = render(&analysis, OutputFormat::Csv);
                    format!("{}\n{}", files[0].1, files[1].1)
                }
                OutputFormat::Json => json(&serde_json::json!({
                    "manifest": analysis.manifest,
                    "windows": analysis.windows,
                    "periods": analysis.periods,
                })),
            };
            write_stdout(&text)?;
        }
    }
    Ok(())
}

/// Both curves as `(kind, entropy, complexity)` records, lower first.
pub fn bound_records(alphabet: usize, resolution: usize) -> Result<Vec<BoundRecord>, CliError> {
    let lower = lower_bound(alphabet, resolution).map_err(CliError::from_core)?;
    let upper = upper_bound(alphabet, resolution).map_err(CliError::from_core)?;
    let records = |c: &BoundCurve| {
        c.points
            .iter()
            .map(|&(entropy, complexity)| BoundRecord {
                kind: c.kind.name(),
                entropy,
                complexity,
            })
            .collect::<Vec<_>>()
    };
    let mut out = records(&lower);
    out.extend(records(&upper));
    Ok(out)
}

pub fn bounds(args: &BoundsArgs) -> Result<(), CliError> {
    let alphabet = match (args.alphabet, args.dimension) {
        (Some(m), _) => m,
        (None, d) => factorial(d.unwrap_or(4)).map_err(CliError::from_core)?,
    };
    let records = bound_records(alphabet, args.resolution)?;
    let text = match args.output {
        OutputFormat::Csv => table(BoundRecord::HEADER, &records, BoundRecord::row),
        OutputFormat::Json => json(&records),
    };
    match &args.out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::output(path, e)),
        None => write_stdout(&text),
    }
}

pub fn generate(args: &GenerateArgs) -> Result<(), CliError> {
    if args.count == 0 {
        return Err(CliError::usage("count must be at least 1"));
    }
    let kind = match args.kind {
        KindArg::WhiteNoise => GeneratorKind::WhiteNoise,
        KindArg::RandomWalk => GeneratorKind::RandomWalk,
        KindArg::LogisticMap => GeneratorKind::LogisticMap {
            r: args.r,
            x0: args.x0,
            transient: args.transient,
        },
    };
    let base = args
        .label
        .clone()
        .unwrap_or_else(|| kind.name().to_string());
    let mut series = Vec::with_capacity(args.count);
    for k in 0..args.count {
        let spec = GeneratorSpec::new(kind, args.length, args.seed.wrapping_add(k as u64));
        let s = synthesize(&spec).map_err(CliError::from_core)?;
        let dates = (0..s.len())
            .map(|i| {
                args.start_date
                    .checked_add_days(Days::new(i as u64))
                    .ok_or_else(|| CliError::usage("dates run past the supported calendar"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let label = if args.count == 1 {
            base.clone()
        } else {
            format!("{base}_{k}")
        };
        series.push(
            RawSeries::with_timestamps(label, s.values().to_vec(), dates)
                .map_err(CliError::from_core)?,
        );
    }
    write_panel(&series, &args.out)
}

fn write_panel(series: &[RawSeries], path: &Path) -> Result<(), CliError> {
    ingest::write_panel_file(series, path, ingest::DEFAULT_DATE_FORMAT, b',')
        .map_err(|e| CliError::output(path, e))
}

fn write_stdout(text: &str) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| CliError::output(Path::new("<stdout>"), e))
}
