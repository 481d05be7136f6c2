//! `equator` — seeded verification suites and orbit-space sampling for the
//! Milnor/Shimada sphere-bundle constructions.
//!
//! Subcommands:
//! - `verify`: run one suite (or all) and print its JSON report to stdout,
//!   with a human summary per suite on stderr.
//! - `sample`: export a round or exotic orbit-space point cloud as CSV or
//!   JSON.
//! - `classify`: tabulate the boundary-parity classification of the exotic
//!   spheres over a range of bundle parameters.
//!
//! Exit codes: 0 when every requested check passes, 1 when any check fails,
//! 2 for usage errors.  The master seed comes from `--seed`, then the
//! `EQUATOR_SEED` environment variable, then the built-in default.

use std::env;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process;

use anyhow::Result;
use clap::{Parser, Subcommand};
use equator_core::{
    classify_range, run_suite, sample_orbit_space, AlgebraTag, CloudSource, Error as CoreError,
    SuiteConfig, SuiteId, DEFAULT_SEED,
};

const SEED_ENV: &str = "EQUATOR_SEED";

#[derive(Parser)]
#[command(
    name = "equator",
    version,
    about = "Verification suites for sphere-bundle equator geometry"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and print its JSON report
    Verify {
        /// Suite id (algebra | automorphism | bundle-welldef |
        /// quotient-welldef | key-lemma | orbit-witness | stratification |
        /// z2-coincide | negative-controls | all)
        #[arg(long, default_value = "all")]
        suite: String,
        /// Restrict to one algebra (quaternion | octonion); default: both
        #[arg(long)]
        algebra: Option<String>,
        /// Comma-separated odd bundle parameters, e.g. "-3,-1,1,3,5,7"
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        k: Option<Vec<i32>>,
        /// Samples per check (default: per-suite)
        #[arg(long)]
        samples: Option<u64>,
        /// Master seed (default: EQUATOR_SEED or 42)
        #[arg(long)]
        seed: Option<u64>,
        /// Override every check tolerance in the suite
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Sample an orbit-space point cloud and write it to a file
    Sample {
        /// Cloud source: "round" or "exotic:<k>" with odd k
        #[arg(long)]
        source: String,
        /// Number of points
        #[arg(long)]
        n: u64,
        /// Master seed (default: EQUATOR_SEED or 42)
        #[arg(long)]
        seed: Option<u64>,
        /// Output file path
        #[arg(long)]
        out: PathBuf,
        /// Output format
        #[arg(long, default_value = "csv", value_parser = ["csv", "json"])]
        format: String,
        /// Algebra generating the sphere (quaternion | octonion)
        #[arg(long, default_value = "octonion")]
        algebra: String,
    },
    /// Tabulate h, k = 2h-1, and the boundary-parity flag over a range
    Classify {
        /// Inclusive range of bundle exponents, e.g. "1..8"
        #[arg(long = "h-range", allow_hyphen_values = true)]
        h_range: String,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => {}
        Ok(false) => process::exit(1),
        Err(err) => {
            eprintln!("error: {err}");
            let usage = err
                .downcast_ref::<CoreError>()
                .is_some_and(CoreError::is_usage);
            process::exit(if usage { 2 } else { 1 });
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Verify {
            suite,
            algebra,
            k,
            samples,
            seed,
            tol,
        } => cmd_verify(&suite, algebra.as_deref(), k, samples, seed, tol),
        Command::Sample {
            source,
            n,
            seed,
            out,
            format,
            algebra,
        } => cmd_sample(&source, n, seed, &out, &format, &algebra),
        Command::Classify { h_range } => cmd_classify(&h_range),
    }
}

/// Seed resolution: explicit flag, then environment, then default.
fn resolve_seed(flag: Option<u64>) -> Result<u64> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match env::var(SEED_ENV) {
        Ok(raw) => raw.trim().parse().map_err(|_| {
            CoreError::InvalidConfig(format!(
                "{SEED_ENV} must be an unsigned integer, got '{raw}'"
            ))
            .into()
        }),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn parse_algebra(s: &str) -> Result<AlgebraTag> {
    match s {
        "quaternion" => Ok(AlgebraTag::Quaternion),
        "octonion" => Ok(AlgebraTag::Octonion),
        other => Err(CoreError::InvalidConfig(format!(
            "unknown algebra '{other}' (expected 'quaternion' or 'octonion')"
        ))
        .into()),
    }
}

fn cmd_verify(
    suite: &str,
    algebra: Option<&str>,
    k: Option<Vec<i32>>,
    samples: Option<u64>,
    seed: Option<u64>,
    tol: Option<f64>,
) -> Result<bool> {
    let seed = resolve_seed(seed)?;
    let algebra = algebra.map(parse_algebra).transpose()?;
    let suites: Vec<SuiteId> = if suite == "all" {
        SuiteId::ALL.to_vec()
    } else {
        vec![suite.parse::<SuiteId>()?]
    };

    let mut reports = Vec::new();
    for id in suites {
        let mut config = SuiteConfig::new(id);
        config.seed = seed;
        config.algebra = algebra;
        if let Some(k_list) = &k {
            config.k_list = k_list.clone();
        }
        config.samples = samples;
        config.tolerance = tol;
        let report = run_suite(&config)?;
        eprintln!(
            "suite {:<18} {}  ({} checks, {:.2}s)",
            report.suite.to_string(),
            if report.pass { "pass" } else { "FAIL" },
            report.checks.len(),
            report.wall_time.as_secs_f64()
        );
        reports.push(report);
    }

    let pass = reports.iter().all(|r| r.pass);
    if reports.len() == 1 {
        println!("{}", reports[0].to_json());
    } else {
        println!("{}", serde_json::to_string_pretty(&reports)?);
    }
    Ok(pass)
}

fn cmd_sample(
    source: &str,
    n: u64,
    seed: Option<u64>,
    out: &PathBuf,
    format: &str,
    algebra: &str,
) -> Result<bool> {
    let seed = resolve_seed(seed)?;
    let source: CloudSource = source.parse()?;
    let tag = parse_algebra(algebra)?;
    if n == 0 {
        return Err(CoreError::InvalidConfig("point count must be >= 1".into()).into());
    }
    let cloud = sample_orbit_space(tag, source, n, seed)?;
    let payload = match format {
        "csv" => {
            let mut text = String::from("x,y,z\n");
            for p in &cloud {
                writeln!(text, "{:.16e},{:.16e},{:.16e}", p.x, p.y, p.z)?;
            }
            text
        }
        _ => serde_json::to_string_pretty(&cloud)? + "\n",
    };
    fs::write(out, payload)?;
    eprintln!(
        "wrote {} points from '{source}' to {}",
        cloud.len(),
        out.display()
    );
    Ok(true)
}

fn cmd_classify(h_range: &str) -> Result<bool> {
    let (lo, hi) = parse_h_range(h_range)?;
    let rows = classify_range(lo, hi)?;
    println!("h,k,odd_bp16");
    for row in &rows {
        println!("{},{},{}", row.h, row.k, row.odd_bp16);
    }
    let odd = rows.iter().filter(|r| r.odd_bp16).count();
    eprintln!("{} of {} rows odd", odd, rows.len());
    Ok(true)
}

/// Parses an inclusive "LO..HI" integer range.
fn parse_h_range(raw: &str) -> Result<(i64, i64)> {
    let invalid = || {
        CoreError::InvalidConfig(format!(
            "invalid h-range '{raw}' (expected 'LO..HI', e.g. '1..8')"
        ))
    };
    let (lo, hi) = raw.split_once("..").ok_or_else(invalid)?;
    Ok((
        lo.trim().parse().map_err(|_| invalid())?,
        hi.trim().parse().map_err(|_| invalid())?,
    ))
}
