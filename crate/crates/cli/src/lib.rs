//! Command-line driver for the `isojac` pipeline.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use isojac::classpoly::{class_polynomial, OrderSpec};
use isojac::latticecert::build_certificate;
use isojac::quartic_iso::{are_isomorphic, IsoReport, QuarticTriple, Scalar};
use isojac::realball::{set_precision_cap, Dyadic, RealBall};
use isojac::report::{family_report, render_text};
use isojac::Error;

/// Environment variable overriding the precision doubling cap.
pub const CAP_ENV: &str = "QT_PRECISION_CAP";

/// Bits used to enclose interval entries given on the `iso` command line.
const INTERVAL_BITS: u32 = 256;

pub mod exit {
    pub const OK: i32 = 0;
    pub const VALIDATION: i32 = 2;
    pub const PRECISION: i32 = 3;
    pub const INTERNAL: i32 = 4;
}

#[derive(Parser, Debug)]
#[command(name = "isojac", version, about = "Plane quartics and a hyperelliptic curve with isomorphic Jacobians")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the class polynomial of Z[sqrt(-m)].
    Classpoly {
        #[arg(long)]
        m: u64,
    },
    /// Build the full family for m with every certificate.
    Family(JobSpec),
    /// Decide whether Q(a1, b1, c1) and Q(a2, b2, c2) are isomorphic.
    Iso {
        /// `a,b,c`; entries are integers, fractions p/q, exact decimals,
        /// or intervals `x+-r`.
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// Lattice certificate for the pair (m, d).
    Certify {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(clap::Args, Debug, Clone)]
pub struct JobSpec {
    #[arg(long)]
    pub m: u64,
    #[arg(long, default_value_t = 30)]
    pub digits: u32,
    #[arg(long = "precision-bits")]
    pub precision_bits: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long = "out")]
    pub output_path: Option<PathBuf>,
}

/// Exit code for a pipeline error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidArgument(_) | Error::Domain(_) | Error::Singular(_) | Error::DegenerateCurve(_) => {
            exit::VALIDATION
        }
        Error::PrecisionExhausted { .. } | Error::UndecidableSign(_) | Error::Undecided(_) => exit::PRECISION,
        _ => exit::INTERNAL,
    }
}

/// One failure: message plus exit code.
#[derive(Debug)]
struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(exit_code(&e), e.to_string())
    }
}

type Outcome = std::result::Result<String, Failure>;

/// Parse `args` (program name first), run, and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::VALIDATION } else { exit::OK };
            let text = e.render().to_string();
            let _ = if code == exit::OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    if let Ok(v) = std::env::var(CAP_ENV) {
        match v.trim().parse::<u32>() {
            Ok(bits) => set_precision_cap(bits),
            Err(_) => {
                let _ = writeln!(err, "error: {CAP_ENV} must be a positive integer, got {v:?}");
                return exit::VALIDATION;
            }
        }
    }
    let result = match cli.command {
        Command::Classpoly { m } => cmd_classpoly(m),
        Command::Family(job) => cmd_family(&job),
        Command::Iso { left, right } => cmd_iso(&left, &right),
        Command::Certify { m, d, out } => cmd_certify(m, d, out.as_ref()),
    };
    match result {
        Ok(s) => {
            let _ = write!(out, "{s}");
            exit::OK
        }
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn cmd_classpoly(m: u64) -> Outcome {
    let order = OrderSpec::new(m)?;
    let r = class_polynomial(&order)?;
    Ok(format!("{}\n", r.f))
}

fn write_out(path: Option<&PathBuf>, body: String) -> Outcome {
    match path {
        Some(p) => {
            std::fs::write(p, &body)
                .map_err(|e| Failure(exit::VALIDATION, format!("cannot write {}: {e}", p.display())))?;
            Ok(String::new())
        }
        None => Ok(body),
    }
}

fn cmd_family(job: &JobSpec) -> Outcome {
    OrderSpec::new(job.m)?;
    let report = family_report(job.m, job.digits, job.precision_bits)?;
    let body = match job.format {
        Format::Text => render_text(&report),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report)
                .map_err(|e| Failure(exit::INTERNAL, format!("serializing report: {e}")))?;
            s.push('\n');
            s
        }
    };
    write_out(job.output_path.as_ref(), body)
}

fn cmd_certify(m: u64, d: u64, out: Option<&PathBuf>) -> Outcome {
    let cert = build_certificate(m, d)?;
    let mut body =
        serde_json::to_string_pretty(&cert).map_err(|e| Failure(exit::INTERNAL, format!("serializing: {e}")))?;
    body.push('\n');
    if !cert.is_valid() {
        let _ = write_out(out, body);
        return Err(Failure(exit::INTERNAL, format!("certificate for (m, d) = ({m}, {d}) does not verify")));
    }
    write_out(out, body)
}

/// One entry of a triple as typed on the command line.
#[derive(Clone, Debug, PartialEq)]
pub enum Entry {
    Exact(BigRational),
    /// Closed interval `[x - r, x + r]`.
    Interval(BigRational, BigRational),
}

/// Parse an integer, `p/q`, or a finite decimal, exactly.
pub fn parse_rational(s: &str) -> std::result::Result<BigRational, String> {
    let s = s.trim();
    let bad = || format!("not a number: {s:?}");
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(BigRational::new(p, q));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("0{int}{frac}").parse().map_err(|_| bad())?;
    let den = num_traits::pow(BigInt::from(10), frac.len());
    let q = BigRational::new(digits, den);
    Ok(if neg { -q } else { q })
}

pub fn parse_entry(s: &str) -> std::result::Result<Entry, String> {
    let s = s.trim();
    let split = s.split_once("+-").or_else(|| s.split_once('±'));
    match split {
        Some((x, r)) => {
            let x = parse_rational(x)?;
            let r = parse_rational(r)?;
            if r < BigRational::zero() {
                return Err(format!("negative radius in {s:?}"));
            }
            Ok(Entry::Interval(x, r))
        }
        None => parse_rational(s).map(Entry::Exact),
    }
}

pub fn parse_triple(s: &str) -> std::result::Result<[Entry; 3], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated entries, got {s:?}"));
    }
    Ok([parse_entry(parts[0])?, parse_entry(parts[1])?, parse_entry(parts[2])?])
}

fn to_ball(e: &Entry) -> RealBall {
    let k = INTERVAL_BITS as i64;
    match e {
        Entry::Exact(q) if q.denom().is_one() => RealBall::from_int(q.numer().clone(), INTERVAL_BITS),
        Entry::Exact(q) => RealBall::from_rational(q, INTERVAL_BITS),
        Entry::Interval(x, r) => {
            let lo = Dyadic::floor_rational(&(x - r), k);
            let hi = Dyadic::ceil_rational(&(x + r), k);
            RealBall::from_endpoints(&lo, &hi, INTERVAL_BITS)
        }
    }
}

fn render_report<S: Scalar>(r: &IsoReport<S>) -> String {
    let mut s = format!("{}\n", r.verdict);
    let _ = writeln!(s, "left: {:?}", r.left.case);
    for (i, c) in r.left.strict_classes.iter().enumerate() {
        let _ = writeln!(s, "  [{i}] {c}");
    }
    let _ = writeln!(s, "right: {:?}", r.right.case);
    for (i, c) in r.right.strict_classes.iter().enumerate() {
        let _ = writeln!(s, "  [{i}] {c}");
    }
    if let Some((i, j)) = r.witness {
        let _ = writeln!(s, "witness: left [{i}] = right [{j}]");
    }
    s
}

fn cmd_iso(left: &str, right: &str) -> Outcome {
    let l = parse_triple(left).map_err(|m| Failure(exit::VALIDATION, m))?;
    let r = parse_triple(right).map_err(|m| Failure(exit::VALIDATION, m))?;
    let exact = |t: &[Entry; 3]| -> Option<QuarticTriple<BigRational>> {
        match t {
            [Entry::Exact(a), Entry::Exact(b), Entry::Exact(c)] => {
                Some(QuarticTriple::new(a.clone(), b.clone(), c.clone()))
            }
            _ => None,
        }
    };
    match (exact(&l), exact(&r)) {
        (Some(a), Some(b)) => Ok(render_report(&are_isomorphic(&a, &b)?)),
        _ => {
            let ball = |t: &[Entry; 3]| QuarticTriple::new(to_ball(&t[0]), to_ball(&t[1]), to_ball(&t[2]));
            Ok(render_report(&are_isomorphic(&ball(&l), &ball(&r))?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn parses_entries() {
        assert_eq!(parse_rational("-3/6").unwrap(), q(-1, 2));
        assert_eq!(parse_rational("1.25").unwrap(), q(5, 4));
        assert_eq!(parse_rational("-.5").unwrap(), q(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), q(7, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1e3").is_err());
        assert!(parse_rational("-").is_err());
        assert_eq!(parse_entry("0.5+-0.01").unwrap(), Entry::Interval(q(1, 2), q(1, 100)));
        assert_eq!(parse_entry("-2±1/3").unwrap(), Entry::Interval(q(-2, 1), q(1, 3)));
        assert!(parse_triple("1,2").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Singular("s".into())), 2);
        assert_eq!(exit_code(&Error::PrecisionExhausted { cap: 1, what: "w".into() }), 3);
        assert_eq!(exit_code(&Error::InternalInconsistency("i".into())), 4);
    }
}
