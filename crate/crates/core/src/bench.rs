//! Experiment harness: per-(size, distribution) aggregates of the critical
//! indices, how often a global dominance property fired, and timing of the
//! linear variant against full-sort Johnson.
//!
//! Statistics are computed in parallel over instances. Timing runs
//! afterwards on the calling thread: one warm-up, then the median of
//! [`BenchConfig::timing_runs`] runs per instance and algorithm.

use std::fmt::Write as _;
use std::io;
use std::path::Path;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{Distribution, GenSpec};
use crate::instance::{Instance, Time};
use crate::johnson::johnson_full;
use crate::linear::{solve, SolvePath, SolveReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchConfig {
    pub reps: usize,
    pub seed: u64,
    pub warmup: usize,
    pub timing_runs: usize,
    /// Skip timing entirely (t_avg and tau are reported as 0).
    pub time: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self { reps: 100, seed: 1, warmup: 1, timing_runs: 5, time: true }
    }
}

/// Diagnostics of a single solved instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InstanceStats {
    pub k_a_prime: usize,
    pub k_a: usize,
    pub kb_bar_prime: usize,
    pub kb_bar: usize,
    pub prop56: bool,
    pub makespan_ok: bool,
    pub fallback: bool,
    pub sort_bound_ok: bool,
}

impl InstanceStats {
    /// Absent indices count as the whole side: `n_A` for A, `n_B - 1` for
    /// the B statistics, which are measured from the last position.
    pub fn of(inst: &Instance, report: &SolveReport) -> Self {
        let n = report.n();
        let idx = report.indices;
        let full_b = report.n_b.saturating_sub(1);
        Self {
            k_a_prime: idx.k_a_prime.unwrap_or(report.n_a),
            k_a: idx.k_a.unwrap_or(report.n_a),
            kb_bar_prime: idx.k_b_prime.map_or(full_b, |k| n - k),
            kb_bar: idx.k_b.map_or(full_b, |k| n - k),
            prop56: matches!(report.path, SolvePath::Prop5 | SolvePath::Prop6),
            makespan_ok: report.makespan == johnson_full(inst).1,
            fallback: report.has_fallback(),
            sort_bound_ok: report.has_fallback() || report.sort_stats.longest <= report.partial_sort_bound(),
        }
    }
}

/// One aggregated row.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub p_max: Time,
    pub dist: Distribution,
    pub reps: usize,
    pub max_ka_prime: usize,
    pub max_ka: usize,
    pub max_kb_bar_prime: usize,
    pub max_kb_bar: usize,
    pub prop56_hits: usize,
    pub t_avg_seconds: f64,
    /// Full-sort time over linear-variant time.
    pub tau: f64,
    /// Instances where the two makespans differ; always 0 unless there is a bug.
    pub mismatches: usize,
    /// Instances where a non-empty side had to be sorted completely.
    pub fallbacks: usize,
    /// Instances sorting a longer range than the critical indices allow.
    pub sort_bound_violations: usize,
}

/// The CSV projection of a [`BenchRow`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub n: usize,
    pub pmax: Time,
    pub dist: Distribution,
    #[serde(rename = "kA_prime")]
    pub ka_prime: usize,
    #[serde(rename = "kA")]
    pub ka: usize,
    #[serde(rename = "kBbar_prime")]
    pub kbbar_prime: usize,
    #[serde(rename = "kBbar")]
    pub kbbar: usize,
    pub prop56: usize,
    pub t_avg: f64,
    pub tau: f64,
}

pub const CSV_HEADER: &str = "n,pmax,dist,kA_prime,kA,kBbar_prime,kBbar,prop56,t_avg,tau";

impl BenchRow {
    pub fn csv_row(&self) -> CsvRow {
        CsvRow {
            n: self.n,
            pmax: self.p_max,
            dist: self.dist,
            ka_prime: self.max_ka_prime,
            ka: self.max_ka,
            kbbar_prime: self.max_kb_bar_prime,
            kbbar: self.max_kb_bar,
            prop56: self.prop56_hits,
            t_avg: self.t_avg_seconds,
            tau: self.tau,
        }
    }

    /// Folds per-instance diagnostics into a row (timing left at 0).
    pub fn aggregate(n: usize, p_max: Time, dist: Distribution, stats: &[InstanceStats]) -> Self {
        let max = |f: fn(&InstanceStats) -> usize| stats.iter().map(f).max().unwrap_or(0);
        let count = |f: fn(&InstanceStats) -> bool| stats.iter().filter(|s| f(s)).count();
        Self {
            n,
            p_max,
            dist,
            reps: stats.len(),
            max_ka_prime: max(|s| s.k_a_prime),
            max_ka: max(|s| s.k_a),
            max_kb_bar_prime: max(|s| s.kb_bar_prime),
            max_kb_bar: max(|s| s.kb_bar),
            prop56_hits: count(|s| s.prop56),
            t_avg_seconds: 0.0,
            tau: 0.0,
            mismatches: count(|s| !s.makespan_ok),
            fallbacks: count(|s| s.fallback),
            sort_bound_violations: count(|s| !s.sort_bound_ok),
        }
    }
}

fn median(mut xs: Vec<Duration>) -> Duration {
    xs.sort();
    xs[xs.len() / 2]
}

fn time_median<F: FnMut()>(config: &BenchConfig, mut f: F) -> Duration {
    for _ in 0..config.warmup {
        f();
    }
    let runs = config.timing_runs.max(1);
    median(
        (0..runs)
            .map(|_| {
                let t = Instant::now();
                f();
                t.elapsed()
            })
            .collect(),
    )
}

/// Runs one row over `config.reps` instances of `spec` (indices `0..reps`).
pub fn run_row(spec: GenSpec, config: &BenchConfig) -> Result<BenchRow> {
    if config.reps < 1 {
        return Err(Error::InvalidArgument("reps must be >= 1".into()));
    }
    spec.validate()?;
    let instances: Vec<Instance> =
        (0..config.reps as u64).into_par_iter().map(|i| spec.instance(i)).collect::<Result<_>>()?;
    let stats: Vec<InstanceStats> = instances.par_iter().map(|inst| InstanceStats::of(inst, &solve(inst))).collect();
    let mut row = BenchRow::aggregate(spec.n, spec.p_max, spec.dist, &stats);

    if config.time {
        let (mut linear, mut full) = (Duration::ZERO, Duration::ZERO);
        for inst in &instances {
            linear += time_median(config, || {
                std::hint::black_box(solve(std::hint::black_box(inst)));
            });
            full += time_median(config, || {
                std::hint::black_box(johnson_full(std::hint::black_box(inst)));
            });
        }
        row.t_avg_seconds = linear.as_secs_f64() / instances.len() as f64;
        row.tau = if linear.is_zero() { 1.0 } else { full.as_secs_f64() / linear.as_secs_f64() };
    }
    Ok(row)
}

/// Uniform instances for every `n` in `sizes` and every `p_max = f * n`.
pub fn run_uniform_suite(sizes: &[usize], pmax_factors: &[Time], config: &BenchConfig) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for &n in sizes {
        for &f in pmax_factors {
            let p_max = (n as Time)
                .checked_mul(f)
                .ok_or(Error::Overflow { n, p_max: Time::MAX })?;
            rows.push(run_row(GenSpec::new(Distribution::Uniform, n, p_max, config.seed), config)?);
        }
    }
    Ok(rows)
}

/// One row per distribution at fixed `n` and scale `p_max`.
pub fn run_distribution_suite(
    dists: &[Distribution],
    n: usize,
    p_max: Time,
    config: &BenchConfig,
) -> Result<Vec<BenchRow>> {
    dists
        .iter()
        .map(|&d| run_row(GenSpec::new(d, n, p_max, config.seed), config))
        .collect()
}

/// CSV text with the fixed header.
pub fn to_csv(rows: &[BenchRow]) -> Result<String> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    for r in rows {
        w.serialize(r.csv_row()).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    }
    let body = w.into_inner().map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    out.push_str(&String::from_utf8(body).expect("csv output is utf-8"));
    Ok(out)
}

pub fn parse_csv(text: &str) -> Result<Vec<CsvRow>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().map_err(|e| Error::Parse { line: 1, message: e.to_string() })?;
    if header.iter().collect::<Vec<_>>().join(",") != CSV_HEADER {
        return Err(Error::Parse { line: 1, message: "unexpected header".into() });
    }
    r.deserialize()
        .enumerate()
        .map(|(i, rec)| rec.map_err(|e| Error::Parse { line: i + 2, message: e.to_string() }))
        .collect()
}

/// Aligned table in the column order of the CSV.
pub fn to_table(rows: &[BenchRow]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:>8} {:>9} {:>12} {:>6} {:>5} {:>7} {:>6} {:>7} {:>12} {:>8}",
        "n", "pmax", "dist", "kA'", "kA", "kB'bar", "kBbar", "Prop56", "t_avg", "tau"
    );
    for r in rows {
        let _ = writeln!(
            s,
            "{:>8} {:>9} {:>12} {:>6} {:>5} {:>7} {:>6} {:>7} {:>12.3e} {:>8.2}",
            r.n,
            r.p_max,
            r.dist,
            r.max_ka_prime,
            r.max_ka,
            r.max_kb_bar_prime,
            r.max_kb_bar,
            r.prop56_hits,
            r.t_avg_seconds,
            r.tau
        );
    }
    s
}

/// Writes the CSV to `path` and returns the text table.
pub fn emit_report(rows: &[BenchRow], csv_path: Option<&Path>) -> io::Result<String> {
    if let Some(p) = csv_path {
        let text = to_csv(rows).map_err(io::Error::other)?;
        std::fs::write(p, text).map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", p.display())))?;
    }
    Ok(to_table(rows))
}
