//! Batch front end for the codimension engine: compute sequences, run check
//! suites, print exponent trends.
//!
//! Exit codes: 0 success, 1 usage or I/O problem, 2 failed consistency gate
//! or failed check, 3 budget exceeded.

mod suites;
mod tables;

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;

use pilab_core::algebras::AlgebraSpec;
use pilab_core::codim::report::{codim_report, exponent_report, RunMode};
use pilab_core::codim::{
    entry_bytes_estimate, logical_shape, ArithMode, Engine, EngineOptions, EvaluationTarget,
};
use pilab_core::freealg::{SpanKind, VarSpec};
use pilab_core::partitions::hook_partition;
use pilab_core::Error;

const EXIT_OK: i32 = 0;
const EXIT_USAGE: i32 = 1;
const EXIT_CONSISTENCY: i32 = 2;
const EXIT_BUDGET: i32 = 3;

#[derive(Parser)]
#[command(
    name = "pilab",
    version,
    about = "Exact codimension sequences, cocharacters and identity checks for structure-constant algebras and their Grassmann envelopes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute codimensions and cocharacter decompositions over a degree range
    Codim(RunArgs),
    /// Run a structural check suite (hooks, duality, tilde, bounds, oracle)
    Check(CheckArgs),
    /// Print an exponent trend table (n-th roots and ratios)
    Exponent(ExponentArgs),
}

#[derive(Args, Clone)]
struct RunArgs {
    /// Builtin algebra name or path to a JSON algebra file
    #[arg(long)]
    algebra: Option<String>,

    /// Evaluation target: the algebra itself or its Grassmann envelope
    #[arg(long, default_value = "algebra", value_parser = ["algebra", "envelope"])]
    target: String,

    /// Sequence kind: ordinary codimensions or graded codimensions
    #[arg(long, default_value = "ordinary", value_parser = ["ordinary", "graded"])]
    mode: String,

    /// Degree range, inclusive, e.g. 2..6
    #[arg(long, value_parser = DegreeRange::from_str)]
    n: DegreeRange,

    /// Arithmetic: exact | modular | modular-verified
    #[arg(long, default_value = "exact")]
    arith: String,

    /// Upgrade modular arithmetic with an exact rank re-verification
    #[arg(long)]
    verify_exact: bool,

    /// Override the spanning-set policy: left-normed | all-bracketings
    #[arg(long)]
    spanning: Option<String>,

    /// Output file (JSON, or CSV with --format csv)
    #[arg(long)]
    out: Option<PathBuf>,

    /// Stdout format: table | json | csv
    #[arg(long, default_value = "table", value_parser = ["table", "json", "csv"])]
    format: String,

    /// Worker threads (default: all cores)
    #[arg(long)]
    jobs: Option<usize>,

    /// Seed for the modular prime and randomized checks
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Proceed past the default degree budget (the memory estimate is printed first)
    #[arg(long)]
    allow_large: bool,
}

#[derive(Args)]
struct CheckArgs {
    /// Which suite to run
    #[arg(long, value_parser = ["hooks", "duality", "tilde", "bounds", "oracle"])]
    suite: String,

    /// Random sample budget for the tilde and oracle suites
    #[arg(long, default_value_t = 500)]
    samples: usize,

    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args)]
struct ExponentArgs {
    /// Hook-dimension trend mode: print d_{h(k,l,t)} roots for hook K,L
    #[arg(long, value_parser = parse_hook)]
    hook: Option<(u32, u32)>,

    #[command(flatten)]
    run: RunArgs,
}

#[derive(Clone, Debug)]
struct DegreeRange {
    lo: u32,
    hi: u32,
}

impl FromStr for DegreeRange {
    type Err = String;

    fn from_str(s: &str) -> Result<DegreeRange, String> {
        if let Some((a, b)) = s.split_once("..") {
            let lo: u32 = a.trim().parse().map_err(|_| format!("bad range `{s}`"))?;
            let hi: u32 = b.trim().parse().map_err(|_| format!("bad range `{s}`"))?;
            if lo == 0 || hi < lo {
                return Err(format!("range `{s}` must satisfy 1 <= A <= B"));
            }
            Ok(DegreeRange { lo, hi })
        } else {
            let v: u32 = s.trim().parse().map_err(|_| format!("bad degree `{s}`"))?;
            if v == 0 {
                return Err("degree must be at least 1".to_string());
            }
            Ok(DegreeRange { lo: v, hi: v })
        }
    }
}

fn parse_hook(s: &str) -> Result<(u32, u32), String> {
    let (k, l) = s.split_once(',').ok_or_else(|| format!("bad hook `{s}`, expected K,L"))?;
    let k = k.trim().parse().map_err(|_| format!("bad hook `{s}`"))?;
    let l = l.trim().parse().map_err(|_| format!("bad hook `{s}`"))?;
    Ok((k, l))
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return EXIT_USAGE;
        }
        Err(e) => {
            // --help / --version
            let _ = e.print();
            return EXIT_OK;
        }
    };
    let outcome = match cli.command {
        Command::Codim(args) => cmd_codim(&args),
        Command::Check(args) => cmd_check(&args),
        Command::Exponent(args) => cmd_exponent(&args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::BudgetExceeded(_) => EXIT_BUDGET,
                Error::InternalInconsistency(_) | Error::VerificationMismatch { .. } => {
                    EXIT_CONSISTENCY
                }
                _ => EXIT_USAGE,
            }
        }
    }
}

struct Prepared {
    engine: Engine,
    target: EvaluationTarget,
    mode: RunMode,
    degrees: DegreeRange,
}

fn prepare(args: &RunArgs) -> Result<Prepared, Error> {
    let name = args
        .algebra
        .as_deref()
        .ok_or_else(|| Error::Parse("--algebra is required".to_string()))?;
    let algebra = AlgebraSpec::load(name)?;
    let target = match args.target.as_str() {
        "envelope" => EvaluationTarget::envelope(algebra)?,
        _ => EvaluationTarget::plain(algebra),
    };
    let mode = RunMode::from_str(&args.mode)?;
    let mut arith = ArithMode::from_str(&args.arith)?;
    if args.verify_exact && arith == ArithMode::Modular {
        arith = ArithMode::ModularVerified;
    }
    let spanning = args
        .spanning
        .as_deref()
        .map(SpanKind::from_str)
        .transpose()?;
    let budget_mb = std::env::var("PILAB_BUDGET_MB")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(4096);

    // default degree budget: 8 for small plain algebras, 6 for envelopes and
    // larger algebras; --allow-large lifts it (the memory cap still applies)
    let default_cap = if target.is_envelope() || target.algebra().dim() > 3 {
        6
    } else {
        8
    };
    let kind = spanning.unwrap_or(target.default_span_kind());
    if args.n.hi > default_cap {
        let vars = VarSpec::Ordinary {
            n: args.n.hi as usize,
        };
        let (rows, cols) = logical_shape(&target, vars, kind);
        let mb = rows * cols * entry_bytes_estimate(arith.is_exact()) / (1024 * 1024);
        if !args.allow_large {
            return Err(Error::BudgetExceeded(format!(
                "degree {} exceeds the default budget of {default_cap} for this target \
                 (largest matrix about {rows} x {cols}, est. {mb} MB); pass --allow-large to proceed",
                args.n.hi
            )));
        }
        eprintln!(
            "note: degree {} past the default budget; largest matrix about {rows} x {cols} (est. {mb} MB)",
            args.n.hi
        );
    }

    let engine = Engine::new(EngineOptions {
        arithmetic: arith,
        spanning,
        seed: args.seed,
        budget_mb,
        threads: args.jobs,
    });
    Ok(Prepared {
        engine,
        target,
        mode,
        degrees: args.n.clone(),
    })
}

fn write_or_print(args: &RunArgs, report: &pilab_core::codim::report::Report) -> Result<(), Error> {
    let rendered = match args.format.as_str() {
        "csv" => report.to_csv(),
        _ => report.to_json(),
    };
    if let Some(path) = &args.out {
        std::fs::write(path, &rendered)?;
    } else if args.format != "table" {
        println!("{rendered}");
    }
    Ok(())
}

fn cmd_codim(args: &RunArgs) -> Result<i32, Error> {
    let prep = prepare(args)?;
    let report = codim_report(
        &prep.engine,
        &prep.target,
        prep.mode,
        prep.degrees.lo..=prep.degrees.hi,
    )?;
    if args.format == "table" || args.out.is_some() {
        tables::print_codim_table(&report);
    }
    write_or_print(args, &report)?;
    Ok(EXIT_OK)
}

fn cmd_check(args: &CheckArgs) -> Result<i32, Error> {
    let prep = prepare(&args.run)?;
    let records = match args.suite.as_str() {
        "hooks" => suites::hooks(&prep.engine, &prep.target, prep.mode, &prep.degrees)?,
        "duality" => suites::duality(&prep.engine, &prep.target, &prep.degrees)?,
        "tilde" => suites::tilde(&prep.engine, &prep.target, args.samples, &prep.degrees)?,
        "bounds" => suites::bounds(&prep.engine, &prep.target, &prep.degrees)?,
        "oracle" => suites::oracle(&prep.engine, &prep.target, args.samples, &prep.degrees)?,
        other => return Err(Error::Parse(format!("unknown suite `{other}`"))),
    };
    let all_pass = records.iter().all(|r| r.passed());
    for record in &records {
        match &record.witness {
            Some(w) => println!("{:<50} {}  witness: {w}", record.name, record.status),
            None => println!("{:<50} {}", record.name, record.status),
        }
    }
    let report =
        pilab_core::codim::report::check_report(&prep.engine, &prep.target, prep.mode, records);
    write_or_print(&args.run, &report)?;
    println!(
        "suite {}: {}",
        args.suite,
        if all_pass { "pass" } else { "FAIL" }
    );
    Ok(if all_pass { EXIT_OK } else { EXIT_CONSISTENCY })
}

fn cmd_exponent(args: &ExponentArgs) -> Result<i32, Error> {
    if let Some((k, l)) = args.hook {
        return hook_trend(k, l, args.run.n.hi);
    }
    let prep = prepare(&args.run)?;
    let mut seq: Vec<(u32, BigUint)> = Vec::new();
    for n in prep.degrees.lo..=prep.degrees.hi {
        let c = match prep.mode {
            RunMode::Ordinary => BigUint::from(prep.engine.codimension(&prep.target, n)?),
            RunMode::Graded => prep.engine.graded_codimension(&prep.target, n)?,
        };
        seq.push((n, c));
    }
    // reference exponent: dim L for envelope targets, the recorded value for
    // plain builtins that have one
    let reference = if prep.target.is_envelope() {
        Some(prep.target.algebra().dim() as u64)
    } else {
        prep.target.algebra().reference_exponent()
    };
    // envelopes of centerless algebras are centerless and their codimension
    // sequences stay monotone; drops there are flagged as violations
    let expect_monotone =
        prep.target.is_envelope() && prep.target.algebra().center_dimension() == 0;
    let report = exponent_report(&seq, reference, expect_monotone);
    tables::print_exponent_table(&prep.target.describe(), &report);
    if let Some(path) = &args.run.out {
        std::fs::write(path, serde_json::to_string_pretty(&report).expect("serializable"))?;
    }
    if expect_monotone && !report.monotonicity_violations.is_empty() {
        return Ok(EXIT_CONSISTENCY);
    }
    Ok(EXIT_OK)
}

/// Roots of hook-shaped dimensions d_{h(k,l,t)} against the reference line
/// k+l, for sizes up to `max_size`.
fn hook_trend(k: u32, l: u32, max_size: u32) -> Result<i32, Error> {
    println!(
        "{:>4} {:>6} {:>24} {:>12}  hook ({k},{l}), reference {}",
        "t",
        "n",
        "d_h(k,l,t)",
        "nth_root",
        k + l
    );
    let mut t = 0u32;
    loop {
        let size = k * l + t * (k + l);
        if size > max_size || (t > 0 && k + l == 0) {
            break;
        }
        if size > 0 {
            let p = hook_partition(k, l, t)?;
            let d = p.dimension();
            let root = pilab_core::codim::report::nth_root_f64(&d, size);
            println!("{t:>4} {size:>6} {d:>24} {root:>12.6}");
        }
        t += 1;
        if k + l == 0 {
            break;
        }
    }
    Ok(EXIT_OK)
}
