//! `f2flow` command-line tool.
//!
//! Exit codes: 0 success, 1 other failure (I/O on output, perf gate),
//! 2 input or usage error, 3 numeric guard, 4 internal invariant breach.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use f2flow::bench::{emit_report, run_row, BenchConfig, BenchRow};
use f2flow::generators::{gen_worstcase, histogram, instance_seed, Distribution, GenSpec};
use f2flow::linear::{solve_with, SolveConfig};
use f2flow::probability::{
    audit_published, grid_den_from_step, monte_carlo_check, optimize_alpha, p1_star_exact, p_star, table_k_a, Alpha,
    PPrime, ProbPoint,
};
use f2flow::select::Selection;
use f2flow::{johnson_full, makespan, Error, Instance, Time, FORMAT_VERSION};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Parser)]
#[command(name = "f2flow", version = version_string(), about = "Two-machine flow shop tools")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

const fn version_string() -> &'static str {
    concat!(env!("CARGO_PKG_VERSION"), " (format 1)")
}

#[derive(Subcommand)]
enum Command {
    /// Generate seeded instance files plus a manifest.
    Gen(GenArgs),
    /// Solve one instance file.
    Solve(SolveArgs),
    /// Run the benchmark harness.
    Bench(BenchArgs),
    /// Evaluate the probabilistic bound on the critical prefix.
    Prob(ProbArgs),
    /// Emit the adversarial instance whose only optimum is the full Johnson order.
    Worstcase(WorstcaseArgs),
}

#[derive(Args)]
struct GenArgs {
    /// uniform, geometric, negbinomial, poisson, worstcase or figure1.
    /// Geometric, negbinomial and poisson draws of 0 are clamped to 1.
    #[arg(long, value_parser = parse_dist)]
    dist: Distribution,
    #[arg(long, default_value_t = 100)]
    n: usize,
    /// Scale parameter (upper bound for uniform, 2 x mean for the others).
    #[arg(long, default_value_t = 100)]
    pmax: Time,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long)]
    out: PathBuf,
    /// Also write an empirical PMF of 100000 draws as `value,count` CSV.
    #[arg(long)]
    histogram: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Auto,
    Full,
    Linear,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SelectionArg {
    Mom,
    Quick,
}

#[derive(Args)]
struct SolveArgs {
    path: PathBuf,
    #[arg(long, value_enum, default_value_t = Mode::Auto)]
    mode: Mode,
    /// Print a JSON record instead of text.
    #[arg(long)]
    json: bool,
    #[arg(long, value_enum, default_value_t = SelectionArg::Mom)]
    selection: SelectionArg,
    /// Seed for quickselect pivots and the free-block spot check.
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_values_t = vec![100, 1000, 10000])]
    sizes: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_values_t = vec![1, 10])]
    pmax_factors: Vec<Time>,
    #[arg(long, value_delimiter = ',', value_parser = parse_dist, default_value = "uniform")]
    dists: Vec<Distribution>,
    #[arg(long, default_value_t = 100)]
    reps: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Skip timing (t_avg and tau reported as 0).
    #[arg(long)]
    no_timing: bool,
    /// Fail unless tau > 1 for every row with n >= 10000.
    #[arg(long)]
    perf_gate: bool,
}

#[derive(Args)]
struct ProbArgs {
    /// A single n (otherwise the range --from..=--to).
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 20)]
    from: usize,
    #[arg(long, default_value_t = 200)]
    to: usize,
    #[arg(long, default_value_t = 20)]
    step: usize,
    /// Critical prefix size (default: the table value for n).
    #[arg(long)]
    ka: Option<usize>,
    /// Fixed alpha in (0, 1); otherwise optimized on the grid.
    #[arg(long, value_parser = parse_alpha)]
    alpha: Option<Alpha>,
    #[arg(long, default_value_t = 0.01)]
    grid_step: f64,
    #[arg(long, value_enum, default_value_t = PPrimeArg::Floor)]
    p_prime: PPrimeArg,
    /// Write rows as CSV to this path.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Cross-check P1* against exact rational arithmetic (n <= 60).
    #[arg(long)]
    exact: bool,
    /// Compare every published row under both p' rules.
    #[arg(long)]
    audit: bool,
    /// Add a Monte Carlo estimate with this many trials per row.
    #[arg(long)]
    mc_trials: Option<u64>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PPrimeArg {
    Floor,
    Real,
}

#[derive(Args)]
struct WorstcaseArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_dist(s: &str) -> Result<Distribution, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_alpha(s: &str) -> Result<Alpha, String> {
    Alpha::parse(s).map_err(|e| e.to_string())
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Overflow { .. } => 3,
            _ => 2,
        };
        Failure::new(code, e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn write_file(path: &Path, contents: &[u8]) -> CmdResult {
    fs::write(path, contents).map_err(|e| Failure::new(1, format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct ManifestFile {
    file: String,
    index: u64,
    seed: u64,
    sha256: String,
}

#[derive(Serialize)]
struct Manifest {
    library_version: &'static str,
    format_version: u32,
    spec: GenSpec,
    prng: &'static str,
    files: Vec<ManifestFile>,
}

const PRNG_DOC: &str = "ChaCha8 (rand_chacha 0.9), one stream per instance seeded with \
                        splitmix64(seed + index * 0x9E3779B97F4A7C15); jobs drawn p1 then p2";

fn cmd_gen(a: GenArgs) -> CmdResult {
    let spec = GenSpec { dist: a.dist, n: a.n, p_max: a.pmax, seed: a.seed, count: a.count };
    spec.validate()?;
    fs::create_dir_all(&a.out).map_err(|e| Failure::new(1, format!("{}: {e}", a.out.display())))?;
    let width = a.count.saturating_sub(1).to_string().len().max(3);
    let mut files = Vec::with_capacity(a.count);
    for index in 0..a.count as u64 {
        let text = spec.instance(index)?.to_text();
        let name = format!("{}_{index:0width$}.txt", a.dist);
        write_file(&a.out.join(&name), text.as_bytes())?;
        files.push(ManifestFile {
            file: name,
            index,
            seed: if a.dist.is_random() { instance_seed(a.seed, index) } else { 0 },
            sha256: hex::encode(Sha256::digest(text.as_bytes())),
        });
    }
    let manifest = Manifest {
        library_version: f2flow::VERSION,
        format_version: FORMAT_VERSION,
        spec,
        prng: PRNG_DOC,
        files,
    };
    let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    write_file(&a.out.join("manifest.json"), json.as_bytes())?;
    if let Some(path) = a.histogram {
        if !a.dist.is_random() {
            return Err(Failure::new(2, format!("--histogram needs a random distribution, not {}", a.dist)));
        }
        let mut csv = String::from("value,count\n");
        for (v, c) in histogram(a.dist, a.pmax, 100_000, a.seed)? {
            csv.push_str(&format!("{v},{c}\n"));
        }
        write_file(&path, csv.as_bytes())?;
    }
    println!("wrote {} instance(s) to {}", a.count, a.out.display());
    Ok(())
}

fn read_instance(path: &Path) -> Result<Instance, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::new(2, format!("{}: {e}", path.display())))?;
    Instance::parse(&text).map_err(|e| {
        let f = Failure::from(e);
        Failure::new(f.code, format!("{}: {}", path.display(), f.message))
    })
}

/// Free-block shuffles checked by `solve` before printing.
const SPOT_CHECKS: usize = 16;

fn cmd_solve(a: SolveArgs) -> CmdResult {
    let inst = read_instance(&a.path)?;
    if a.mode == Mode::Full {
        let (seq, cmax) = johnson_full(&inst);
        if a.json {
            let v = serde_json::json!({ "n": inst.len(), "makespan": cmax, "mode": "full", "sequence": seq.one_based() });
            println!("{v}");
        } else {
            let seq: Vec<String> = seq.one_based().iter().map(|j| j.to_string()).collect();
            println!("Cmax={cmax} mode=full");
            println!("sequence: {}", seq.join(" "));
        }
        return Ok(());
    }
    let selection = match a.selection {
        SelectionArg::Mom => Selection::MedianOfMedians,
        SelectionArg::Quick => Selection::Quickselect { seed: a.seed },
    };
    let report = solve_with(&inst, SolveConfig { selection });
    let check = makespan(&inst, report.sequence.as_slice())?;
    if check != report.makespan {
        return Err(Failure::new(4, format!("reported makespan {} but sequence gives {check}", report.makespan)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    for _ in 0..SPOT_CHECKS {
        let shuffled = report.shuffled_sequence(&mut rng);
        let c = makespan(&inst, &shuffled)?;
        if c != report.makespan {
            return Err(Failure::new(4, format!("free-block shuffle changed makespan {} -> {c}", report.makespan)));
        }
    }
    if a.json {
        println!("{}", serde_json::to_string(&report.to_record()).expect("record serializes"));
    } else {
        print!("{}", report.to_text());
    }
    Ok(())
}

fn cmd_bench(a: BenchArgs) -> CmdResult {
    let config = BenchConfig { reps: a.reps, seed: a.seed, time: !a.no_timing, ..Default::default() };
    let mut rows: Vec<BenchRow> = Vec::new();
    for &dist in &a.dists {
        if !dist.is_random() {
            return Err(Failure::new(2, format!("bench needs a random distribution, not {dist}")));
        }
        for &n in &a.sizes {
            for &f in &a.pmax_factors {
                let p_max = (n as Time).checked_mul(f).ok_or(Error::Overflow { n, p_max: f })?;
                rows.push(run_row(GenSpec::new(dist, n, p_max, a.seed), &config)?);
            }
        }
    }
    let table = emit_report(&rows, a.csv.as_deref()).map_err(|e| Failure::new(1, e.to_string()))?;
    print!("{table}");
    let mismatches: usize = rows.iter().map(|r| r.mismatches).sum();
    if mismatches > 0 {
        return Err(Failure::new(4, format!("{mismatches} instance(s) where the linear variant lost optimality")));
    }
    if a.perf_gate {
        if a.no_timing {
            return Err(Failure::new(2, "--perf-gate needs timing"));
        }
        let slow: Vec<String> =
            rows.iter().filter(|r| r.n >= 10_000 && r.tau <= 1.0).map(|r| format!("n={} pmax={}", r.n, r.p_max)).collect();
        if !slow.is_empty() {
            return Err(Failure::new(1, format!("perf gate: tau <= 1 for {}", slow.join(", "))));
        }
    }
    Ok(())
}

const PROB_HEADER: &str = "n,kA,alpha,P1star,P2star,Pstar,Qstar";

fn prob_csv_line(p: &ProbPoint) -> String {
    format!("{},{},{},{},{},{},{}", p.n, p.k_a, p.alpha, p.p1_star, p.p2_star, p.p_star, p.q_star)
}

fn cmd_prob(a: ProbArgs) -> CmdResult {
    let rule = match a.p_prime {
        PPrimeArg::Floor => PPrime::Floor,
        PPrimeArg::Real => PPrime::Real,
    };
    if a.audit {
        println!("{:>4} {:>3} {:>5} {:>9} {:>12} {:>12} {:>6}", "n", "kA", "alpha", "printed", "floor", "real", "match");
        for row in audit_published() {
            let p = row.published;
            let fmt = |pt: &ProbPoint| match p.printed {
                f2flow::probability::Printed::Decimal(_) => format!("{:.5}", pt.p_star),
                f2flow::probability::Printed::OneMinusPow10(_) => format!("q={:.3e}", pt.q_star),
            };
            let status = if row.floor_ok && row.real_ok {
                "both"
            } else if row.floor_ok {
                "floor"
            } else if row.real_ok {
                "real"
            } else {
                "none"
            };
            println!(
                "{:>4} {:>3} {:>5} {:>9} {:>12} {:>12} {:>6}",
                p.n,
                p.k_a,
                p.alpha(),
                p.printed.to_string(),
                fmt(&row.floor),
                fmt(&row.real),
                status
            );
        }
        return Ok(());
    }
    if a.step == 0 {
        return Err(Failure::new(2, "--step must be positive"));
    }
    let ns: Vec<usize> = match a.n {
        Some(n) => vec![n],
        None => (a.from..=a.to).step_by(a.step).collect(),
    };
    if ns.contains(&0) {
        return Err(Failure::new(2, "n must be >= 1"));
    }
    let grid = grid_den_from_step(a.grid_step)?;
    let mut points = Vec::with_capacity(ns.len());
    for &n in &ns {
        let k_a = a.ka.unwrap_or_else(|| table_k_a(n));
        if k_a > n {
            return Err(Failure::new(2, format!("kA={k_a} exceeds n={n}")));
        }
        points.push(match a.alpha {
            Some(alpha) => p_star(n, k_a, alpha, rule),
            None => optimize_alpha(n, k_a, grid, rule)?,
        });
    }
    println!("{:>5} {:>3} {:>6} {:>10} {:>10} {:>10} {:>10}", "n", "kA", "alpha", "P1*", "P2*", "P*", "1-P*");
    for p in &points {
        println!(
            "{:>5} {:>3} {:>6} {:>10.6} {:>10.6} {:>10.6} {:>10.3e}",
            p.n, p.k_a, p.alpha, p.p1_star, p.p2_star, p.p_star, p.q_star
        );
    }
    if a.exact {
        for p in &points {
            if p.n > 60 {
                return Err(Failure::new(2, format!("--exact supports n <= 60 (got {})", p.n)));
            }
            let (hi, _) = p1_star_exact(p.n, p.k_a, p.alpha);
            let exact = num_traits::ToPrimitive::to_f64(&hi).unwrap_or(f64::NAN);
            let rel = if exact == 0.0 { (p.p1_star - exact).abs() } else { ((p.p1_star - exact) / exact).abs() };
            println!("exact n={} P1*={exact:.15} rel_err={rel:.2e}", p.n);
        }
    }
    if let Some(trials) = a.mc_trials {
        for p in &points {
            let mc = monte_carlo_check(p.n, p.k_a, p.alpha, trials, a.seed)?;
            println!(
                "mc n={} P1*~{:.4} [{:.4},{:.4}] P2*~{:.4} [{:.4},{:.4}] joint~{:.4} [{:.4},{:.4}]",
                p.n, mc.p1.freq, mc.p1.lo, mc.p1.hi, mc.p2.freq, mc.p2.lo, mc.p2.hi, mc.joint.freq, mc.joint.lo, mc.joint.hi
            );
        }
    }
    if let Some(path) = a.csv {
        let mut out = String::from(PROB_HEADER);
        out.push('\n');
        for p in &points {
            out.push_str(&prob_csv_line(p));
            out.push('\n');
        }
        write_file(&path, out.as_bytes())?;
    }
    Ok(())
}

fn cmd_worstcase(a: WorstcaseArgs) -> CmdResult {
    let text = gen_worstcase(a.n)?.to_text();
    match a.out {
        Some(path) => write_file(&path, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Solve(a) => cmd_solve(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Prob(a) => cmd_prob(a),
        Command::Worstcase(a) => cmd_worstcase(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
