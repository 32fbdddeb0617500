//! `jpolya` command-line front end.
//!
//! [`dispatch`] takes the argument vector and two writers, so the whole
//! interface runs in-process under test. Exit codes: 0 success, 1 an audited
//! inequality failed (or a b-file disagreed), 2 usage or input error.

pub mod bfile;
pub mod cache;
pub mod formats;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use crate::bounds::{
    audit_ennola, audit_envelope, audit_granville, audit_jp_prime_lower, audit_proof_sums, bound_eval,
    optimize_lower_bound, psi, LatticeInstance, ScanConfig, DEFAULT_EPSILON,
};
use crate::hickerson::{self, DEFAULT_MAX_N};
use crate::jp::{enumerate_family, is_jp, EnumerationLimits, Family};
use crate::primes::{
    audit_counting, audit_exponent_ratio_range, audit_mertens, audit_rosser, audit_stirling, theta_trend,
};
use crate::reps::{audit_nk_multiplicity, count_representations, enumerate_representations};
use crate::report::AuditReport;
use crate::verdict::Verdict;
use formats::Format;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ASSERTION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Accepts `12345`, `1e6` and `10^18`.
pub fn parse_natural(s: &str) -> Result<BigUint, String> {
    let s = s.trim().replace('_', "");
    let pow = |base: &str, exp: &str, ten: bool| -> Result<BigUint, String> {
        let b = BigUint::from_str(base).map_err(|_| format!("bad number {s:?}"))?;
        let e: u32 = exp.parse().map_err(|_| format!("bad exponent in {s:?}"))?;
        Ok(if ten { b * BigUint::from(10u32).pow(e) } else { b.pow(e) })
    };
    if let Some((b, e)) = s.split_once(['e', 'E']) {
        pow(b, e, true)
    } else if let Some((b, e)) = s.split_once('^') {
        pow(b, e, false)
    } else {
        BigUint::from_str(&s).map_err(|_| format!("not a natural number: {s:?}"))
    }
}

fn parse_u64(s: &str) -> Result<u64, String> {
    u64::try_from(parse_natural(s)?).map_err(|_| format!("{s} does not fit in 64 bits"))
}

fn parse_family(s: &str) -> Result<Family, String> {
    Family::from_str(s).map_err(|e| e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "jpolya", version, about = "Jordan-Pólya numbers: enumeration, representations and bound audits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Number of family members up to a limit
    Count {
        #[arg(long, value_parser = parse_natural)]
        limit: BigUint,
        #[arg(long, default_value = "j", value_parser = parse_family)]
        family: Family,
    },
    /// Family members up to a limit
    List {
        #[arg(long, value_parser = parse_natural)]
        limit: BigUint,
        #[arg(long, value_enum, default_value_t = Format::Txt)]
        format: Format,
        #[arg(long, default_value = "j", value_parser = parse_family)]
        family: Family,
        /// Write here instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
        /// Directory holding enumeration caches
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Whether N is a product of factorials
    Member {
        #[arg(value_parser = parse_natural)]
        n: BigUint,
    },
    /// Number of ways to write N as a product of factorials m! with m >= 2
    Reps {
        #[arg(value_parser = parse_natural)]
        n: BigUint,
        /// Also print every representation
        #[arg(long)]
        enumerate: bool,
    },
    /// Solutions of n! = a1! a2! ... ar!
    Hickerson {
        #[arg(long, default_value_t = DEFAULT_MAX_N, value_parser = parse_u64)]
        max_n: u64,
        #[arg(long)]
        include_trivial: bool,
    },
    /// Psi(x, y), the count of n <= x with no prime factor above y
    Psi {
        #[arg(long, value_parser = parse_u64)]
        x: u64,
        #[arg(long, value_parser = parse_u64)]
        y: u64,
    },
    /// Upper and lower envelopes of log J(x) at L = log x
    Bounds {
        #[arg(long)]
        log_x: f64,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
    },
    /// Run one audit
    Audit(AuditArgs),
    /// Compare the enumeration with an OEIS b-file
    OeisCheck {
        #[arg(long)]
        bfile: PathBuf,
        #[arg(long, value_parser = parse_natural)]
        limit: BigUint,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    Lemma5,
    Rosser,
    Stirling,
    Feller,
    Ennola,
    ProofSums,
    Granville,
    Nk,
    JpPrimeLower,
    Mertens,
    Theta,
    Envelope,
    Optimizer,
}

#[derive(Debug, Args)]
struct AuditArgs {
    #[arg(long, value_enum)]
    which: Which,
    /// lemma5: largest m
    #[arg(long, default_value_t = 500, value_parser = parse_u64)]
    m_max: u64,
    /// rosser: largest k (default 100000); nk: largest k (default 8)
    #[arg(long, value_parser = parse_u64)]
    k_max: Option<u64>,
    /// stirling: largest n
    #[arg(long, default_value_t = 1000, value_parser = parse_u64)]
    n_max: u64,
    /// feller: largest k and R for the simplex identity
    #[arg(long, default_value_t = 8)]
    max: u64,
    /// feller: largest a, b for the binomial bound
    #[arg(long, default_value_t = 30)]
    binomial_max: u64,
    /// ennola: comma-separated weights
    #[arg(long, value_delimiter = ',', default_values_t = [1.0, 1.0])]
    weights: Vec<f64>,
    /// ennola: budget z
    #[arg(long, default_value_t = 2.0)]
    budget: f64,
    /// proof-sums, optimizer: L = log x
    #[arg(long, default_value_t = 1e4)]
    log_x: f64,
    /// proof-sums: largest L of the crossover scan
    #[arg(long, default_value_t = 1e16)]
    scan_max: f64,
    /// granville, jp-prime-lower: x (defaults 10^6 and 10^4)
    #[arg(long, value_parser = parse_natural)]
    x: Option<BigUint>,
    /// granville, mertens, theta: y (defaults 5, 10^6, 10^6)
    #[arg(long, value_parser = parse_u64)]
    y: Option<u64>,
    /// jp-prime-lower: number of prime factorials
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// mertens, envelope
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    epsilon: f64,
    /// envelope: decimal exponents of x
    #[arg(long, value_delimiter = ',', default_values_t = [4, 6, 8, 10, 12, 14, 16, 18])]
    exponents: Vec<u32>,
}

/// Runs one invocation; `args` includes the program name.
pub fn dispatch<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let text = e.to_string();
            let line = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("usage error");
            let _ = writeln!(err, "{line}");
            return EXIT_USAGE;
        }
    };
    match run(cli.command, out) {
        Ok(v) if v.failed() => EXIT_ASSERTION,
        Ok(_) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_USAGE
        }
    }
}

fn report(out: &mut dyn Write, r: &dyn AuditReport) -> anyhow::Result<Verdict> {
    writeln!(out, "{r}")?;
    let v = r.verdict();
    writeln!(out, "verdict: {v}")?;
    Ok(v)
}

fn run(command: Command, out: &mut dyn Write) -> anyhow::Result<Verdict> {
    let limits = EnumerationLimits::default();
    match command {
        Command::Count { limit, family } => {
            writeln!(out, "{}", enumerate_family(&limit, family, limits)?.count())?;
        }
        Command::List {
            limit,
            format,
            family,
            out: path,
            cache,
        } => {
            let list = match cache {
                Some(dir) => cache::load_or_build(&dir, &limit, family, limits)?.0,
                None => enumerate_family(&limit, family, limits)?,
            };
            let text = formats::render(&list, format);
            match path {
                Some(p) => fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?,
                None => out.write_all(text.as_bytes())?,
            }
        }
        Command::Member { n } => writeln!(out, "{}", if is_jp(&n) { "yes" } else { "no" })?,
        Command::Reps { n, enumerate } => {
            if enumerate {
                let reps = enumerate_representations(&n, None)?;
                for r in &reps {
                    writeln!(out, "{r}")?;
                }
                writeln!(out, "{}", reps.len())?;
            } else {
                writeln!(out, "{}", count_representations(&n)?)?;
            }
        }
        Command::Hickerson { max_n, include_trivial } => {
            let sols = hickerson::search(max_n, include_trivial)?;
            for s in &sols {
                writeln!(out, "{s}")?;
            }
            writeln!(out, "{} solutions with n <= {max_n}", sols.len())?;
        }
        Command::Psi { x, y } => writeln!(out, "{}", psi(x, y)?)?,
        Command::Bounds { log_x, epsilon } => {
            let b = bound_eval(log_x, epsilon)?;
            writeln!(out, "log_upper {}", b.log_upper)?;
            writeln!(out, "log_lower {}", b.log_lower)?;
        }
        Command::Audit(a) => return run_audit(a, out),
        Command::OeisCheck { bfile, limit } => {
            let text = fs::read_to_string(&bfile).with_context(|| format!("reading {}", bfile.display()))?;
            let parsed = bfile::parse_bfile(&text)?;
            let list = enumerate_family(&limit, Family::J, limits)?;
            let outcome = bfile::compare(&parsed, &list.values, &limit);
            writeln!(out, "{outcome}")?;
            return Ok(Verdict::from_bool(outcome.agrees()));
        }
    }
    Ok(Verdict::Holds)
}

fn run_audit(a: AuditArgs, out: &mut dyn Write) -> anyhow::Result<Verdict> {
    let x_or = |d: u64| a.x.clone().unwrap_or_else(|| BigUint::from(d));
    match a.which {
        Which::Lemma5 => {
            let rows = audit_exponent_ratio_range(a.m_max)?;
            let pairs: u64 = rows.iter().map(|r| r.pairs_checked).sum();
            let bad: Vec<_> = rows.iter().filter(|r| r.violation.is_some()).collect();
            writeln!(out, "m <= {}: {pairs} prime pairs checked, {} violations", a.m_max, bad.len())?;
            for r in &bad {
                writeln!(out, "{r}")?;
            }
            Ok(Verdict::from_bool(bad.is_empty()))
        }
        Which::Rosser => report(out, &audit_rosser(a.k_max.unwrap_or(100_000) as usize)?),
        Which::Stirling => report(out, &audit_stirling(a.n_max)?),
        Which::Feller => report(out, &audit_counting(a.max, a.binomial_max)),
        Which::Ennola => report(out, &audit_ennola(&LatticeInstance::new(a.weights, a.budget)?)?),
        Which::ProofSums => {
            let cfg = ScanConfig {
                l_max: a.scan_max,
                ..ScanConfig::default()
            };
            report(out, &audit_proof_sums(a.log_x, &cfg)?)
        }
        Which::Granville => {
            let x = u64::try_from(x_or(1_000_000)).map_err(|_| anyhow::anyhow!("x does not fit in 64 bits"))?;
            writeln!(out, "{}", audit_granville(x, a.y.unwrap_or(5))?)?;
            Ok(Verdict::Holds)
        }
        Which::Nk => report(out, &audit_nk_multiplicity(a.k_max.unwrap_or(8) as u32)?),
        Which::JpPrimeLower => report(out, &audit_jp_prime_lower(&x_or(10_000), a.k)?),
        Which::Mertens => report(out, &audit_mertens(a.y.unwrap_or(1_000_000), a.epsilon)?),
        Which::Theta => {
            writeln!(out, "{}", theta_trend(a.y.unwrap_or(1_000_000))?)?;
            Ok(Verdict::Holds)
        }
        Which::Envelope => report(out, &audit_envelope(&a.exponents, a.epsilon)?),
        Which::Optimizer => {
            let o = optimize_lower_bound(a.log_x)?;
            writeln!(out, "{o}")?;
            Ok(Verdict::from_bool(o.local_max))
        }
    }
}
