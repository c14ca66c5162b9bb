//! The `mw-tutte` command line.
//!
//! Exit codes: 0 success, 1 oracle mismatch or I/O failure, 2 invalid
//! parameters, 3 degenerate denominator without `--fallback-oracle`, 10 a
//! violated multiplicative inequality reported by `verify`.

pub mod config;
pub mod oracle_check;
pub mod search;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::asymptotics::{
    empirical_exponent, growth_rate_x_axis, mw_exponent, optimal_alpha, threshold_x0, AsymptoticParams,
};
use crate::error::{Error, Result};
use crate::exact::{self, parse_rational, BigRational};
use crate::oracle::{thicken_matroid, uniform_oracle};
use crate::thickening::{mw_report, thickened_eval, ThickenedUniform};

use config::ConfigFile;
use search::{run_search, write_rows, Inequality, IntRange, OutputFormat, RankSelector, SearchConfig};

pub const EXIT_OK: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_DEGENERATE: u8 = 3;
pub const EXIT_COUNTEREXAMPLE: u8 = 10;

#[derive(Debug, Parser)]
#[command(
    name = "mw-tutte",
    version,
    about = "Exact Tutte evaluations of thickened uniform matroids"
)]
pub struct Cli {
    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact T(x, y) of U(n,r) thickened k times.
    Eval(EvalArgs),
    /// Merino-Welsh report at (x,0), (0,x), (1,1).
    Verify(VerifyArgs),
    /// Sweep a family and report every member.
    Search(SearchArgs),
    /// Asymptotic growth quantities.
    Asymptote(AsymptoteArgs),
    /// Cross-check closed forms against the brute-force oracle.
    OracleCheck(OracleCheckArgs),
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(short)]
    pub n: u32,
    #[arg(short)]
    pub r: u32,
    #[arg(short, default_value_t = 1)]
    pub k: u32,
    #[arg(short, allow_hyphen_values = true)]
    pub x: String,
    #[arg(short, allow_hyphen_values = true)]
    pub y: String,
    /// Expand the explicit thickened matroid when the identity degenerates.
    #[arg(long)]
    pub fallback_oracle: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(short)]
    pub n: u32,
    #[arg(short)]
    pub r: u32,
    #[arg(short, default_value_t = 1)]
    pub k: u32,
    #[arg(short, default_value = "2")]
    pub x: String,
    /// Emit the report as one JSON object instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Range of n: `33`, `2..33` or `3..99:3`.
    #[arg(short)]
    pub n: Option<String>,
    /// `all` or a comma-separated list of ranks.
    #[arg(short)]
    pub r: Option<String>,
    /// Rank density r/n as an exact rational, e.g. `2/3`.
    #[arg(long, short = 'a')]
    pub alpha: Option<String>,
    /// Range of thickening multiplicities.
    #[arg(short)]
    pub k: Option<String>,
    #[arg(short)]
    pub x: Option<String>,
    #[arg(long, value_enum)]
    pub inequality: Option<Inequality>,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    #[arg(long)]
    pub stop_at_first: bool,
    /// `key=value` file; flags win over its entries.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AsymptoteArgs {
    #[command(subcommand)]
    pub query: AsymptoteQuery,
}

#[derive(Debug, Subcommand)]
pub enum AsymptoteQuery {
    /// Growth exponent of T(1,1)^2 / (T(x,0) T(0,x)) for the 2-thickened family.
    Exponent {
        #[arg(short)]
        x: f64,
        #[arg(long, short = 'a', default_value_t = 2.0 / 3.0)]
        alpha: f64,
    },
    /// Per-element log growth of T(x, 0) for U(n, alpha n).
    Growth {
        #[arg(short)]
        x: f64,
        #[arg(long, short = 'a')]
        alpha: f64,
    },
    /// Largest root of x^3 - 9(x - 1).
    X0 {
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Density maximizing the squared basis growth, and the maximum.
    OptimalAlpha,
    /// Exact-arithmetic exponents for U(n, 2n/3) thickened twice.
    Empirical {
        #[arg(short, default_value = "2")]
        x: String,
        /// Comma-separated n values, or a range such as `99..999:99`.
        #[arg(short, default_value = "99,198,396,798,999")]
        n: String,
    },
}

#[derive(Debug, Args)]
pub struct OracleCheckArgs {
    #[arg(short = 'n', long = "max-n", default_value_t = 8)]
    pub max_n: usize,
}

/// Runs a parsed command, writing results to `out` and diagnostics to `err`.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let threads = cli.threads.or_else(|| config_threads(&cli.command));
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start worker pool: {e}");
            return EXIT_MISMATCH;
        }
    };
    let outcome = dispatch(cli.command, &pool, out, err);
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// `threads` from a search config file; the global flag takes precedence.
fn config_threads(command: &Command) -> Option<usize> {
    let Command::Search(SearchArgs { config: Some(path), .. }) = command else {
        return None;
    };
    let text = std::fs::read_to_string(path).ok()?;
    ConfigFile::parse(&text).ok()?.get("threads")?.parse().ok()
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::DegenerateDenominator { .. } => EXIT_DEGENERATE,
        _ => EXIT_INVALID,
    }
}

/// Parses `args` (including the program name) and runs them.
pub fn run_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli, out, err),
        Err(e) => {
            let _ = write!(err, "{e}");
            if e.use_stderr() {
                EXIT_INVALID
            } else {
                // --help / --version
                EXIT_OK
            }
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::InvalidParameters(format!("write failed: {e}"))
}

fn dispatch(command: Command, pool: &rayon::ThreadPool, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8> {
    match command {
        Command::Eval(a) => cmd_eval(a, out, err),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Search(a) => cmd_search(a, pool, out, err),
        Command::Asymptote(a) => cmd_asymptote(a.query, pool, out),
        Command::OracleCheck(a) => cmd_oracle_check(a.max_n, out, err),
    }
}

/// Exact value, plus a 12-digit decimal when it is not an integer.
fn write_value(out: &mut dyn Write, value: &BigRational) -> Result<()> {
    writeln!(out, "{value}").map_err(io)?;
    if !value.is_integer() {
        writeln!(out, "~ {}", significant(exact::to_f64(value), 12)).map_err(io)?;
    }
    Ok(())
}

/// Fixed-point rendering with `digits` significant digits.
pub fn significant(v: f64, digits: i32) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v:.*}", (digits - 1).max(0) as usize);
    }
    let magnitude = v.abs().log10().floor() as i32;
    let decimals = (digits - 1 - magnitude).clamp(0, 40) as usize;
    format!("{v:.decimals$}")
}

pub fn cmd_eval(a: EvalArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8> {
    let t = ThickenedUniform::from_params(a.n, a.r, a.k)?;
    let x = parse_rational(&a.x)?;
    let y = parse_rational(&a.y)?;
    let value = match thickened_eval(t, &x, &y) {
        Ok(v) => v,
        Err(Error::DegenerateDenominator { .. }) if a.fallback_oracle => {
            writeln!(
                err,
                "note: identity degenerates at y = {y}; expanding the explicit matroid"
            )
            .map_err(io)?;
            let explicit = thicken_matroid(&uniform_oracle(a.n as usize, a.r as usize)?, a.k as usize)?;
            explicit.subset_expansion_tutte()?.eval(&x, &y)
        }
        Err(e) => return Err(e),
    };
    write_value(out, &value)?;
    Ok(EXIT_OK)
}

pub fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> Result<u8> {
    if a.r == 0 || a.r >= a.n {
        return Err(Error::InvalidParameters(format!(
            "verify needs 0 < r < n, got n = {}, r = {}",
            a.n, a.r
        )));
    }
    let t = ThickenedUniform::from_params(a.n, a.r, a.k)?;
    let x = parse_rational(&a.x)?;
    let report = mw_report(t, &x)?;
    if a.json {
        let line = serde_json::to_string(&report).map_err(|e| Error::Parse(e.to_string()))?;
        writeln!(out, "{line}").map_err(io)?;
    } else {
        let verdict = |holds: bool| if holds { "holds" } else { "violated" };
        let lines = [
            format!(
                "matroid: U({},{}) thickened {}x, {} elements, rank {}",
                a.n,
                a.r,
                a.k,
                t.element_count(),
                t.rank()
            ),
            format!("x: {}", report.x),
            format!("T(x,0): {}", report.t_x0),
            format!("T(0,x): {}", report.t_0x),
            format!("T(1,1): {}", report.t_11),
            format!("ratio: {}", report.ratio_mult),
            format!("ratio_real: {}", significant(report.ratio_mult_real, 12)),
            format!("multiplicative: {}", verdict(report.status_mult)),
            format!("additive: {}", verdict(report.status_add)),
            format!("maximum: {}", verdict(report.status_max)),
        ];
        for line in lines {
            writeln!(out, "{line}").map_err(io)?;
        }
    }
    Ok(if report.status_mult {
        EXIT_OK
    } else {
        EXIT_COUNTEREXAMPLE
    })
}

/// Merges flags over the optional config file over the defaults.
pub fn search_config(a: &SearchArgs) -> Result<(SearchConfig, OutputFormat)> {
    let file = match &a.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidParameters(format!("cannot read {}: {e}", path.display())))?;
            ConfigFile::parse(&text)?
        }
        None => ConfigFile::default(),
    };
    let pick = |flag: &Option<String>, key: &str| flag.clone().or_else(|| file.get(key).map(str::to_string));

    let mut cfg = SearchConfig::default();
    if let Some(n) = pick(&a.n, "n") {
        cfg.n = n.parse::<IntRange>()?;
    }
    if let Some(k) = pick(&a.k, "k") {
        cfg.k = k.parse::<IntRange>()?;
    }
    if let Some(x) = pick(&a.x, "x") {
        cfg.x = parse_rational(&x)?;
    }
    // An explicit flag of either kind beats the file's value of the other.
    let r_flag = a.r.clone();
    let alpha_flag = a.alpha.clone();
    match (r_flag, alpha_flag) {
        (Some(_), Some(_)) => {
            return Err(Error::InvalidParameters("give either -r or --alpha, not both".into()));
        }
        (Some(r), None) => cfg.r = r.parse::<RankSelector>()?,
        (None, Some(alpha)) => cfg.r = RankSelector::Fraction(parse_rational(&alpha)?),
        (None, None) => match (file.get("r"), file.get("alpha")) {
            (Some(_), Some(_)) => {
                return Err(Error::InvalidParameters("config gives both r and alpha".into()));
            }
            (Some(r), None) => cfg.r = r.parse::<RankSelector>()?,
            (None, Some(alpha)) => cfg.r = RankSelector::Fraction(parse_rational(alpha)?),
            (None, None) => {}
        },
    }
    cfg.inequality = match a.inequality {
        Some(i) => i,
        None => file
            .get("inequality")
            .map(str::parse)
            .transpose()?
            .unwrap_or(Inequality::Mult),
    };
    cfg.stop_at_first = a.stop_at_first || file.get_bool("stop-at-first")?.unwrap_or(false);
    let format = match a.format {
        Some(f) => f,
        None => file
            .get("format")
            .map(str::parse)
            .transpose()?
            .unwrap_or(OutputFormat::Json),
    };
    cfg.validate()?;
    Ok((cfg, format))
}

pub fn cmd_search(a: SearchArgs, pool: &rayon::ThreadPool, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8> {
    let (cfg, format) = search_config(&a)?;
    let outcome = pool.install(|| run_search(&cfg))?;
    write_rows(&outcome.rows, format, out)?;
    match outcome.first_violation {
        Some(i) => {
            let row = &outcome.rows[i];
            writeln!(
                err,
                "{} rows, {} violations; first at n={} r={} k={} ({} elements)",
                outcome.rows.len(),
                outcome.violations,
                row.n,
                row.r,
                row.k,
                row.n as u64 * row.k as u64
            )
            .map_err(io)?;
        }
        None => writeln!(err, "{} rows, no violations", outcome.rows.len()).map_err(io)?,
    }
    Ok(EXIT_OK)
}

fn parse_n_list(s: &str) -> Result<Vec<u32>> {
    if s.contains("..") {
        return Ok(s.parse::<IntRange>()?.iter().collect());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|e| Error::Parse(format!("bad n {t:?}: {e}")))
        })
        .collect()
}

pub fn cmd_asymptote(query: AsymptoteQuery, pool: &rayon::ThreadPool, out: &mut dyn Write) -> Result<u8> {
    let w = |out: &mut dyn Write, s: String| writeln!(out, "{s}").map_err(io);
    match query {
        AsymptoteQuery::Exponent { x, alpha } => {
            let value = mw_exponent(AsymptoticParams::new(x, alpha)?)?;
            w(out, format!("exponent: {}", significant(value, 12)))?;
        }
        AsymptoteQuery::Growth { x, alpha } => {
            let value = growth_rate_x_axis(AsymptoticParams::new(x, alpha)?)?;
            w(out, format!("growth: {}", significant(value, 12)))?;
        }
        AsymptoteQuery::X0 { tol } => {
            let x0 = threshold_x0(tol)?;
            w(out, format!("x0: {}", significant(x0, 12)))?;
        }
        AsymptoteQuery::OptimalAlpha => {
            let (alpha, value) = optimal_alpha();
            w(out, format!("alpha: {}", significant(alpha, 12)))?;
            w(out, format!("value: {}", significant(value, 12)))?;
        }
        AsymptoteQuery::Empirical { x, n } => {
            let x_exact = parse_rational(&x)?;
            let x_real = exact::to_f64(&x_exact);
            let limit = mw_exponent(AsymptoticParams::new(x_real, 2.0 / 3.0)?)?;
            let ns = parse_n_list(&n)?;
            use rayon::prelude::*;
            let values = pool.install(|| {
                ns.par_iter()
                    .map(|&n| empirical_exponent(n, &x_exact))
                    .collect::<Result<Vec<_>>>()
            })?;
            w(out, "n\texponent\tlimit\tgap".to_string())?;
            for (n, v) in ns.iter().zip(values) {
                w(
                    out,
                    format!(
                        "{n}\t{}\t{}\t{}",
                        significant(v, 12),
                        significant(limit, 12),
                        significant(limit - v, 12)
                    ),
                )?;
            }
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_oracle_check(max_n: usize, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8> {
    match oracle_check::oracle_check(max_n)? {
        Ok(suites) => {
            for s in suites {
                writeln!(out, "pass  {} ({} instances)", s.name, s.instances).map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Err(msg) => {
            writeln!(out, "FAIL  {msg}").map_err(io)?;
            writeln!(err, "oracle mismatch").map_err(io)?;
            Ok(EXIT_MISMATCH)
        }
    }
}
