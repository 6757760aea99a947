//! Command-line front end: `compute`, `compute3`, `verify` and `bench`.
//!
//! [`run_cli`] takes the argument list and output streams explicitly and
//! returns the process exit code, so the binary is a thin wrapper.

use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::config::{Config, Method};
use crate::driver::{t_cbrt, t_dispatch, SumResult};
use crate::higher::t3;
use crate::natural::Natural;
use crate::oracle::{t_naive, t_sqrt};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const BENCH_HEADER: &str = "n,method,elapsed_ms,regions_processed,div_calls";

#[derive(Debug, Parser)]
#[command(name = "divsum", version, about = "Exact divisor summatory function T(n) and T3(n)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print T(n), the number of lattice points with xy ≤ n.
    Compute(ComputeArgs),
    /// Print T3(n), the number of lattice points with xyz ≤ n.
    Compute3(ComputeArgs),
    /// Check the tangent method against brute force for every n ≤ M.
    Verify(VerifyArgs),
    /// Time every method over a fixed ladder of n and print CSV.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Args)]
pub struct Tuning {
    #[arg(long, default_value = "cbrt")]
    pub method: Method,
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
    pub c1: u64,
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
    pub c2: u64,
    /// Sum the leading columns with the division-free counter.
    #[arg(long)]
    pub divfree: bool,
}

impl Tuning {
    pub fn config(&self) -> Config {
        Config {
            c1: self.c1,
            c2: self.c2,
            method: self.method,
            use_divfree: self.divfree,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ComputeArgs {
    /// Nonnegative decimal integer of any length.
    #[arg(long)]
    pub n: String,
    #[command(flatten)]
    pub tuning: Tuning,
    /// Print a JSON object with the value and work counters.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long = "max-n")]
    pub max_n: String,
    #[command(flatten)]
    pub tuning: Tuning,
    /// Check `samples` random n ≤ M against the square-root method instead
    /// of sweeping every n.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 100)]
    pub samples: u64,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    /// Largest power of ten in the ladder.
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..=18))]
    pub max_exp: u32,
    #[command(flatten)]
    pub tuning: Tuning,
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = if code == 0 {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Compute(args) => compute(&args, false, out),
        Command::Compute3(args) => compute(&args, true, out),
        Command::Verify(args) => verify(&args, out),
        Command::Bench(args) => bench(&args, out),
    };
    match outcome {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Compute(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_MISMATCH
        }
    }
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<crate::error::Error> for Failure {
    fn from(e: crate::error::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

fn parse_natural(flag: &str, text: &str) -> Result<BigUint, Failure> {
    let trimmed = text.trim();
    if trimmed.is_empty() || !trimmed.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Failure::Usage(format!("--{flag} must be a nonnegative decimal integer, got '{text}'")));
    }
    BigUint::from_str(trimmed).map_err(|e| Failure::Usage(format!("--{flag}: {e}")))
}

/// Value and counters of one computation, stringified so both widths can
/// share the output code.
struct Outcome {
    value: String,
    stats: crate::stats::RunStats,
}

impl<N: Natural> From<SumResult<N>> for Outcome {
    fn from(r: SumResult<N>) -> Self {
        Outcome {
            value: r.value.to_string(),
            stats: r.stats,
        }
    }
}

/// Runs `f` in `u128` when `n` is within its exact range, else in `BigUint`.
fn with_width<F128, FBig>(n: &BigUint, small: F128, big: FBig) -> crate::error::Result<Outcome>
where
    F128: FnOnce(&u128) -> crate::error::Result<Outcome>,
    FBig: FnOnce(&BigUint) -> crate::error::Result<Outcome>,
{
    let limit = u128::cbrt_limit().expect("u128 is bounded");
    match n.to_u128() {
        Some(m) if m <= limit => small(&m),
        _ => big(n),
    }
}

fn t_any(n: &BigUint, config: &Config) -> crate::error::Result<Outcome> {
    with_width(
        n,
        |m| t_dispatch(m, config).map(Outcome::from),
        |m| t_dispatch(m, config).map(Outcome::from),
    )
}

fn t3_any(n: &BigUint, config: &Config) -> crate::error::Result<Outcome> {
    with_width(
        n,
        |m| t3(m, config).map(Outcome::from),
        |m| t3(m, config).map(Outcome::from),
    )
}

fn compute(args: &ComputeArgs, triple: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    let n = parse_natural("n", &args.n)?;
    let config = args.tuning.config();
    let start = Instant::now();
    let result = if triple { t3_any(&n, &config)? } else { t_any(&n, &config)? };
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    if args.json {
        let s = result.stats;
        let doc = json!({
            "value": result.value,
            "regions_processed": s.regions_processed,
            "max_stack_depth": s.max_stack_depth,
            "div_calls": s.div_calls,
            "sqrt_calls": s.sqrt_calls,
            "manual_columns": s.manual_columns,
            "elapsed_ms": elapsed_ms,
        });
        writeln!(out, "{doc}")?;
    } else {
        writeln!(out, "{}", result.value)?;
    }
    Ok(EXIT_OK)
}

fn verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let max_n = parse_natural("max-n", &args.max_n)?;
    let config = Config {
        method: Method::Cbrt,
        ..args.tuning.config()
    };
    let max_n: u128 = match max_n.to_u128() {
        Some(m) if m <= u128::cbrt_limit().expect("u128 is bounded") => m,
        _ => return Err(Failure::Usage(format!("--max-n {max_n} is too large to verify"))),
    };

    let mut check = |n: u128, expected: u128, oracle: &str| -> Result<bool, Failure> {
        let got = t_cbrt(&n, &config)?.value;
        if got != expected {
            writeln!(out, "mismatch n={n} cbrt={got} {oracle}={expected}")?;
            return Ok(false);
        }
        Ok(true)
    };

    match args.seed {
        None => {
            for n in 0..=max_n {
                if !check(n, t_naive(&n), "naive")? {
                    return Ok(EXIT_MISMATCH);
                }
            }
        }
        Some(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..args.samples {
                let n = rng.gen_range(0..=max_n);
                if !check(n, t_sqrt(&n), "sqrt")? {
                    return Ok(EXIT_MISMATCH);
                }
            }
        }
    }
    writeln!(out, "ok {max_n}")?;
    Ok(EXIT_OK)
}

/// Largest exponent each method is run at in the ladder.
fn ladder_cap(method: Method) -> u32 {
    match method {
        Method::Naive => 7,
        Method::Sqrt => 14,
        Method::Cbrt => 18,
    }
}

fn bench(args: &BenchArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    writeln!(out, "{BENCH_HEADER}")?;
    for exp in 1..=args.max_exp {
        let n = BigUint::from(10u32).pow(exp);
        for method in Method::ALL {
            if exp > ladder_cap(method) {
                continue;
            }
            let config = Config {
                method,
                ..args.tuning.config()
            };
            let start = Instant::now();
            let result = t_any(&n, &config)?;
            let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
            writeln!(
                out,
                "{n},{method},{elapsed_ms:.3},{},{}",
                result.stats.regions_processed, result.stats.div_calls
            )?;
        }
    }
    Ok(EXIT_OK)
}
