//! Acceptance suite. Each criterion runs once, in order, and prints one
//! `PASS` / `FAIL` / `SKIPPED` line with its measurement and runtime. The
//! process exits non-zero if any gated criterion fails.
//!
//! The Libor replication is reported only; point `CECP_LIBOR_PANEL` at the
//! 28-series wide panel to run it.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use cecp_core::bounds::{lower_bound, upper_bound, DEFAULT_RESOLUTION};
use cecp_core::ingest::{load_panel, PanelSource};
use cecp_core::ordinal::Embedding;
use cecp_core::quantifiers::{disequilibrium_normalizer, Quantifiers};
use cecp_core::synth::{generate, GeneratorKind, GeneratorSpec};
use cecp_core::windows::{group_periods, sliding_analysis, AnalysisConfig, WindowResult};
use cecp_core::RawSeries;
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};
use rand_distr::{Distribution, Gamma, StandardNormal};

enum Outcome {
    Pass(String),
    Fail(String),
    Skipped(String),
}

struct Criterion {
    name: &'static str,
    gated: bool,
    budget: Option<Duration>,
    run: fn() -> Outcome,
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Outcome::Pass(detail)
    } else {
        Outcome::Fail(detail)
    }
}

fn noise(n: usize, seed: u64) -> RawSeries {
    generate(&GeneratorSpec::new(GeneratorKind::WhiteNoise, n, seed)).unwrap()
}

// ---- independent oracles ----

fn naive_entropy(p: &[f64]) -> f64 {
    let mut s = 0.0;
    for &x in p {
        if x > 0.0 {
            s -= x * x.log2();
        }
    }
    s
}

fn naive_js(p: &[f64], q: &[f64]) -> f64 {
    let mid: Vec<f64> = p.iter().zip(q).map(|(a, b)| 0.5 * (a + b)).collect();
    naive_entropy(&mid) - 0.5 * naive_entropy(p) - 0.5 * naive_entropy(q)
}

fn delta(m: usize, k: usize) -> Vec<f64> {
    let mut d = vec![0.0; m];
    d[k] = 1.0;
    d
}

/// Largest JS divergence from uniform, searched over every delta distribution.
fn brute_force_js_max(m: usize) -> f64 {
    let uniform = vec![1.0 / m as f64; m];
    (0..m)
        .map(|k| naive_js(&delta(m, k), &uniform))
        .fold(f64::NEG_INFINITY, f64::max)
}

fn naive_quantifiers(p: &[f64]) -> (f64, f64) {
    let m = p.len();
    let h = naive_entropy(p) / (m as f64).log2();
    let uniform = vec![1.0 / m as f64; m];
    let c = naive_js(p, &uniform) / brute_force_js_max(m) * h;
    (h, c)
}

fn dirichlet(rng: &mut StdRng, m: usize, alpha: f64) -> Vec<f64> {
    let gamma = Gamma::new(alpha, 1.0).unwrap();
    let w: Vec<f64> = (0..m).map(|_| gamma.sample(rng)).collect();
    let total: f64 = w.iter().sum();
    w.into_iter().map(|x| x / total).collect()
}

// ---- criteria ----

fn structural() -> Outcome {
    let s = noise(3851, 1);
    let cfg = AnalysisConfig::default();
    let all = sliding_analysis(&s, &cfg).unwrap();
    let capped_cfg = AnalysisConfig {
        max_windows: Some(177),
        ..cfg
    };
    let capped = sliding_analysis(&s, &capped_cfg).unwrap();
    let sizes: Vec<usize> = group_periods(&capped, 16)
        .unwrap()
        .iter()
        .map(|p| p.size())
        .collect();
    let mut expected = vec![16; 10];
    expected.push(17);
    check(
        all.len() == 178 && capped.len() == 177 && sizes == expected,
        format!(
            "{} windows, capped {} -> period sizes {sizes:?}",
            all.len(),
            capped.len()
        ),
    )
}

fn quantifier_oracle() -> Outcome {
    let mut rng = StdRng::seed_from_u64(2024);
    let mut worst = 0.0f64;
    for i in 0..200 {
        let m = if i % 2 == 0 { 6 } else { 24 };
        let mut w: Vec<f64> = (0..m).map(|_| rng.random::<f64>()).collect();
        // every fourth draw has empty states
        if i % 4 < 2 {
            for x in w.iter_mut().step_by(3) {
                *x = 0.0;
            }
        }
        let total: f64 = w.iter().sum();
        let p: Vec<f64> = w.iter().map(|x| x / total).collect();
        let q = Quantifiers::from_probabilities(&p).unwrap();
        let (h, c) = naive_quantifiers(&p);
        worst = worst
            .max((q.entropy - h).abs())
            .max((q.complexity - c).abs());
    }
    check(
        worst <= 1e-12,
        format!("max |diff| = {worst:.3e} over 200 distributions"),
    )
}

fn q0_verification() -> Outcome {
    let mut worst = 0.0f64;
    for m in [2usize, 6, 24] {
        // the library works in nats; the oracle's maximum is in bits
        let brute = 1.0 / (brute_force_js_max(m) * std::f64::consts::LN_2);
        let formula = disequilibrium_normalizer(m).unwrap();
        worst = worst.max((brute - formula).abs() / formula.abs());
    }
    check(
        worst <= 1e-10,
        format!("max relative diff = {worst:.3e} for M = 2, 6, 24"),
    )
}

fn bound_containment() -> Outcome {
    let m = 24;
    let lo = lower_bound(m, DEFAULT_RESOLUTION).unwrap();
    let hi = upper_bound(m, DEFAULT_RESOLUTION).unwrap();
    let mut rng = StdRng::seed_from_u64(24);
    let mut violations = 0;
    let mut worst = 0.0f64;
    for _ in 0..100_000 {
        let p = dirichlet(&mut rng, m, 1.0);
        let q = Quantifiers::from_probabilities(&p).unwrap();
        let over = q.complexity - hi.interpolate(q.entropy);
        let under = lo.interpolate(q.entropy) - q.complexity;
        let excess = over.max(under);
        worst = worst.max(excess);
        if excess > 1e-6 {
            violations += 1;
        }
    }
    check(
        violations == 0,
        format!("{violations} of 100000 outside, worst excess {worst:.3e}"),
    )
}

fn discrimination() -> Outcome {
    let embedding = Embedding::new(4, 1).unwrap();
    let quant = |s: &RawSeries| {
        Quantifiers::from_distribution(&embedding.distribution(s.values()).unwrap()).unwrap()
    };
    let noise_runs: Vec<Quantifiers> = (0..5).map(|seed| quant(&noise(100_000, seed))).collect();
    let chaos_runs: Vec<Quantifiers> = [0.1, 0.2, 0.3, 0.4, 0.6]
        .iter()
        .enumerate()
        .map(|(seed, &x0)| {
            quant(
                &generate(&GeneratorSpec::new(
                    GeneratorKind::logistic(4.0, x0),
                    100_000,
                    seed as u64,
                ))
                .unwrap(),
            )
        })
        .collect();
    let noise_ok = noise_runs
        .iter()
        .all(|q| q.entropy > 0.99 && q.complexity < 0.02);
    let min_noise_h = noise_runs
        .iter()
        .map(|q| q.entropy)
        .fold(f64::INFINITY, f64::min);
    let max_noise_c = noise_runs.iter().map(|q| q.complexity).fold(0.0, f64::max);
    let max_chaos_h = chaos_runs.iter().map(|q| q.entropy).fold(0.0, f64::max);
    let min_chaos_c = chaos_runs
        .iter()
        .map(|q| q.complexity)
        .fold(f64::INFINITY, f64::min);
    check(
        noise_ok && max_chaos_h < min_noise_h && min_chaos_c > max_noise_c,
        format!(
            "noise H >= {min_noise_h:.5}, C <= {max_noise_c:.5}; logistic H <= {max_chaos_h:.5}, C >= {min_chaos_c:.5}"
        ),
    )
}

fn mean_inefficiency(windows: &[WindowResult]) -> f64 {
    windows
        .iter()
        .map(|w| w.quantifiers.inefficiency)
        .sum::<f64>()
        / windows.len() as f64
}

fn efficiency_point() -> Outcome {
    let cfg = AnalysisConfig::default();
    let worst_mean = (0..20)
        .map(|seed| mean_inefficiency(&sliding_analysis(&noise(5000, seed), &cfg).unwrap()))
        .fold(0.0, f64::max);
    let ramp = RawSeries::new("ramp", (0..2000).map(|i| 3.0 * i as f64 - 7.0).collect()).unwrap();
    let ramp_windows = sliding_analysis(&ramp, &cfg).unwrap();
    let ramp_ok = ramp_windows
        .iter()
        .all(|w| w.quantifiers.inefficiency == 1.0);
    check(
        worst_mean < 0.15 && ramp_ok,
        format!("largest per-seed mean {worst_mean:.4}; monotone windows all exactly 1: {ramp_ok}"),
    )
}

fn monotone_invariance() -> Outcome {
    let mut rng = StdRng::seed_from_u64(7);
    let embedding = Embedding::new(4, 1).unwrap();
    let transforms: [fn(f64) -> f64; 3] = [|x| 2.5 * x + 11.0, |x| x * x * x + x, f64::exp];
    let mut mismatches = 0;
    let mut tested = 0;
    while tested < 100 {
        let values: Vec<f64> = (0..500).map(|_| StandardNormal.sample(&mut rng)).collect();
        let mut sorted = values.clone();
        sorted.sort_by(f64::total_cmp);
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        tested += 1;
        let base = embedding.distribution(&values).unwrap();
        for f in transforms {
            let mapped: Vec<f64> = values.iter().map(|&x| f(x)).collect();
            if embedding.distribution(&mapped).unwrap().counts() != base.counts() {
                mismatches += 1;
            }
        }
    }
    check(
        mismatches == 0,
        format!("{mismatches} of 300 transformed series differ"),
    )
}

fn cecp(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_cecp"))
        .args(args)
        .output()
        .expect("cecp binary runs")
}

fn read_dir_bytes(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                std::fs::read(e.path()).unwrap(),
            )
        })
        .collect();
    files.sort();
    files
}

fn determinism() -> Outcome {
    let tmp = tempfile::tempdir().unwrap();
    let panel = tmp.path().join("panel.csv");
    let panel_str = panel.to_str().unwrap();
    let gen = cecp(&[
        "generate",
        "--kind",
        "random-walk",
        "--length",
        "2500",
        "--count",
        "6",
        "--seed",
        "3",
        "-o",
        panel_str,
    ]);
    if !gen.status.success() {
        return Outcome::Fail(format!(
            "generate failed: {}",
            String::from_utf8_lossy(&gen.stderr)
        ));
    }
    let mut compared = 0;
    for format in ["csv", "json"] {
        let mut dirs = Vec::new();
        for serial in [false, true] {
            let dir = tmp.path().join(format!("{format}-{serial}"));
            let mut args = vec![
                "analyze",
                panel_str,
                "--output",
                format,
                "--out-dir",
                dir.to_str().unwrap(),
            ];
            if serial {
                args.push("--serial");
            }
            let out = cecp(&args);
            if !out.status.success() {
                return Outcome::Fail(format!(
                    "analyze failed: {}",
                    String::from_utf8_lossy(&out.stderr)
                ));
            }
            dirs.push(read_dir_bytes(&dir));
        }
        if dirs[0] != dirs[1] {
            return Outcome::Fail(format!(
                "{format} outputs differ between serial and parallel"
            ));
        }
        compared += dirs[0].len();
    }
    Outcome::Pass(format!(
        "{compared} files byte-identical across serial and parallel runs"
    ))
}

fn libor_replication() -> Outcome {
    let Some(path) = std::env::var_os("CECP_LIBOR_PANEL") else {
        return Outcome::Skipped("CECP_LIBOR_PANEL not set".into());
    };
    let panel = match load_panel(&PanelSource::new(&path)) {
        Ok(p) => p,
        Err(e) => return Outcome::Fail(format!("cannot load panel: {e}")),
    };
    let cfg = AnalysisConfig::default();
    let mut early_ok = true;
    let mut early_checked = 0;
    let mut period_ineff: Vec<(f64, usize)> = Vec::new();
    for s in &panel {
        let windows = match sliding_analysis(s, &cfg) {
            Ok(w) => w,
            Err(e) => return Outcome::Fail(e.to_string()),
        };
        let periods = group_periods(&windows, cfg.period_size).unwrap();
        let label = s.label().to_uppercase();
        if ["GBP", "EUR", "CHF"].iter().any(|c| label.contains(c)) {
            for p in periods.iter().take(3) {
                early_checked += 1;
                early_ok &= p.centroid_entropy > 0.8 && p.centroid_complexity < 0.2;
            }
        }
        for p in &periods {
            if period_ineff.len() < p.period_id {
                period_ineff.resize(p.period_id, (0.0, 0));
            }
            let slot = &mut period_ineff[p.period_id - 1];
            slot.0 += mean_inefficiency(&windows[p.windows.clone()]);
            slot.1 += 1;
        }
    }
    let means: Vec<f64> = period_ineff.iter().map(|(s, n)| s / *n as f64).collect();
    let worst = means
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i + 1)
        .unwrap_or(0);
    let dip = (6..=8).contains(&worst);
    let detail = format!(
        "{} series; {early_checked} early GBP/EUR/CHF centroids in region: {early_ok}; most inefficient period {worst}; period means {:?}",
        panel.len(),
        means.iter().map(|m| format!("{m:.3}")).collect::<Vec<_>>()
    );
    check(early_ok && early_checked > 0 && dip, detail)
}

fn main() {
    let criteria = [
        Criterion {
            name: "structural replication",
            gated: true,
            budget: Some(Duration::from_secs(1)),
            run: structural,
        },
        Criterion {
            name: "quantifier oracle equivalence",
            gated: true,
            budget: Some(Duration::from_secs(1)),
            run: quantifier_oracle,
        },
        Criterion {
            name: "Q0 verification",
            gated: true,
            budget: None,
            run: q0_verification,
        },
        Criterion {
            name: "bound containment",
            gated: true,
            budget: Some(Duration::from_secs(30)),
            run: bound_containment,
        },
        Criterion {
            name: "discrimination",
            gated: true,
            budget: Some(Duration::from_secs(10)),
            run: discrimination,
        },
        Criterion {
            name: "efficiency point",
            gated: true,
            budget: None,
            run: efficiency_point,
        },
        Criterion {
            name: "monotone invariance",
            gated: true,
            budget: None,
            run: monotone_invariance,
        },
        Criterion {
            name: "determinism",
            gated: true,
            budget: None,
            run: determinism,
        },
        Criterion {
            name: "Libor replication (reported)",
            gated: false,
            budget: None,
            run: libor_replication,
        },
    ];
    let mut failed = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let (status, mut detail) = match outcome {
            Outcome::Pass(d) => ("PASS", d),
            Outcome::Fail(d) => ("FAIL", d),
            Outcome::Skipped(d) => ("SKIPPED", d),
        };
        let mut status = status;
        if let Some(budget) = c.budget {
            if status == "PASS" && elapsed > budget {
                status = "FAIL";
                detail = format!("{detail}; over the {budget:?} budget");
            }
        }
        println!(
            "{status:<7} {:<32} {detail} [{:.3}s]",
            c.name,
            elapsed.as_secs_f64()
        );
        if status == "FAIL" && c.gated {
            failed.push(c.name);
        }
    }
    if !failed.is_empty() {
        eprintln!("acceptance failed: {failed:?}");
        std::process::exit(1);
    }
    println!("acceptance: all gated criteria passed");
}
