//! `salem`: command-line front end for salem-tori.
//!
//! Every command writes one JSON document (sorted keys) or, for
//! `enumerate`, a CSV atlas. Exit codes: 0 success, 1 usage or I/O error,
//! 2 domain error (not Salem, not realizable, invalid model).

mod args;

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use salem_tori::atlas::{self, AtlasError};
use salem_tori::classify::{realizable, ClassifyError};
use salem_tori::numeric::{truncated_decimal, Interval};
use salem_tori::poly::{parse_poly, print_poly, IntPoly};
use salem_tori::salem::{is_salem, lambda_approx, log_lambda};
use salem_tori::torus::{QuadInt, QuadOrderMatrix, TorusModel};
use salem_tori::wedge::{exterior_square, invert_wedge, square_values};

use args::{Cli, Command, Family, Format};

/// Failure classes mapped to exit codes.
#[derive(Debug)]
enum Failure {
    /// Bad arguments or I/O trouble: exit 1, message only.
    Usage(String),
    /// The input is well formed but the mathematics says no: exit 2. The
    /// report, when present, is still written.
    Domain { message: String, report: Option<Value> },
}

impl Failure {
    fn domain(e: impl std::fmt::Display) -> Self {
        Failure::Domain { message: e.to_string(), report: None }
    }
}

enum Output {
    Json(Value),
    Text(String),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let out = cli.out.clone();
    let (result, code) = match run(cli) {
        Ok(o) => (Some(o), 0),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            (None, 1)
        }
        Err(Failure::Domain { message, report }) => {
            eprintln!("error: {message}");
            (report.map(Output::Json), 2)
        }
    };
    if let Some(o) = result {
        let text = match o {
            Output::Json(v) => format!("{}\n", serde_json::to_string_pretty(&v).expect("JSON value")),
            Output::Text(t) => t,
        };
        if let Err(e) = emit(&text, out.as_deref()) {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    ExitCode::from(code)
}

fn emit(text: &str, out: Option<&Path>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn run(cli: Cli) -> Result<Output, Failure> {
    let eps = parse_rational(&cli.eps)?;
    if cli.format == Some(Format::Csv) && !matches!(cli.command, Command::Enumerate { .. }) {
        return Err(Failure::Usage("--format csv applies only to enumerate".into()));
    }
    match cli.command {
        Command::Classify { poly } => classify(&poly_arg(&poly)?, &eps),
        Command::IsSalem { poly } => salem_report(&poly_arg(&poly)?, &eps),
        Command::Wedge { poly } => wedge(&poly_arg(&poly)?),
        Command::InvertWedge { poly } => {
            let inv = invert_wedge(&poly_arg(&poly)?).map_err(Failure::domain)?;
            Ok(Output::Json(to_json(&inv)))
        }
        Command::Construct { family } => model_report(&build(&family)?, &eps),
        Command::Reorient { family } => {
            let model = build(&family)?.reorient().map_err(Failure::domain)?;
            model_report(&model, &eps)
        }
        Command::Enumerate { degree, max_coeff, workers } => {
            let rows = atlas::enumerate(degree, max_coeff, workers.unwrap_or(cli.workers)).map_err(|e| match e {
                AtlasError::Classify(c) => Failure::domain(c),
                other => Failure::Usage(other.to_string()),
            })?;
            match cli.format.unwrap_or(Format::Csv) {
                Format::Csv => Ok(Output::Text(
                    atlas::to_csv_string(&rows).map_err(|e| Failure::Usage(e.to_string()))?,
                )),
                Format::Json => Ok(Output::Json(to_json(&rows))),
            }
        }
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn poly_arg(text: &str) -> Result<IntPoly, Failure> {
    parse_poly(text).map_err(|e| Failure::Usage(format!("polynomial {text:?}: {e}")))
}

/// Accepts "p/q", integers, decimals and scientific notation.
fn parse_rational(text: &str) -> Result<BigRational, Failure> {
    let bad = || Failure::Usage(format!("invalid rational {text:?}"));
    let value = if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d == BigInt::from(0) {
            return Err(bad());
        }
        BigRational::new(n, d)
    } else {
        let (mantissa, exp) = match text.split_once(['e', 'E']) {
            Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
            None => (text, 0),
        };
        let (int_part, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
        if !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: BigInt = format!("{int_part}{frac}").parse().map_err(|_| bad())?;
        let shift = exp - frac.len() as i32;
        let ten = BigInt::from(10);
        if shift >= 0 {
            BigRational::from_integer(digits * num_traits::pow(ten, shift as usize))
        } else {
            BigRational::new(digits, num_traits::pow(ten, (-shift) as usize))
        }
    };
    if value <= BigRational::from_integer(0.into()) {
        return Err(Failure::Usage("--eps must be positive".into()));
    }
    Ok(value)
}

/// Decimal digits needed to show an interval of width eps.
fn digits_for(eps: &BigRational) -> usize {
    let mut digits = 0;
    let mut scaled = eps.clone();
    let one = BigRational::from_integer(1.into());
    while scaled < one && digits < 60 {
        scaled *= BigRational::from_integer(10.into());
        digits += 1;
    }
    digits
}

fn classify(p: &IntPoly, eps: &BigRational) -> Result<Output, Failure> {
    let report = realizable(p).map_err(|e| match e {
        ClassifyError::NotSalemInput(ns) => Failure::Domain {
            message: format!("not a Salem polynomial: {ns}"),
            report: Some(json!({ "status": "not_salem", "not_salem": to_json(&ns) })),
        },
        other => Failure::domain(other),
    })?;
    let mut v = to_json(&report);
    v["status"] = json!("salem");
    v["lambda"] = json!(truncated_decimal(&lambda_approx(&report.salem, eps).lo, digits_for(eps)));
    match &report.finiteness {
        Some(_) => Ok(Output::Json(v)),
        None => Err(Failure::Domain {
            message: "no complex torus automorphism has this entropy".into(),
            report: Some(v),
        }),
    }
}

fn salem_report(p: &IntPoly, eps: &BigRational) -> Result<Output, Failure> {
    match is_salem(p) {
        Ok(cert) => {
            let half = eps / BigRational::from_integer(2.into());
            let lambda = tidy(lambda_approx(&cert, &half), eps);
            let entropy = tidy(log_lambda(&cert, &half), eps);
            let digits = digits_for(eps);
            Ok(Output::Json(json!({
                "status": "salem",
                "certificate": to_json(&cert),
                "lambda": truncated_decimal(&lambda.lo, digits),
                "lambda_interval": to_json(&lambda),
                "entropy_interval": to_json(&entropy),
            })))
        }
        Err(ns) => Err(Failure::Domain {
            message: format!("not a Salem polynomial: {ns}"),
            report: Some(json!({ "status": "not_salem", "not_salem": to_json(&ns) })),
        }),
    }
}

fn wedge(p: &IntPoly) -> Result<Output, Failure> {
    let q = exterior_square(p).map_err(Failure::domain)?;
    let squares = square_values(&q).ok().map(|(m, n)| json!({ "m": m.to_string(), "n": n.to_string() }));
    Ok(Output::Json(json!({
        "p_poly": print_poly(p),
        "q_poly": print_poly(&q),
        "square_values": squares,
    })))
}

fn pairing_arg(text: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::Usage(format!("pairing {text:?} must be two indices \"i,j\""));
    let (i, j) = text.split_once(',').ok_or_else(bad)?;
    Ok((i.trim().parse().map_err(|_| bad())?, j.trim().parse().map_err(|_| bad())?))
}

fn build(family: &Family) -> Result<TorusModel, Failure> {
    let model = match family {
        Family::Quartic { poly, pairing } => TorusModel::from_quartic(&poly_arg(poly)?, pairing_arg(pairing)?),
        Family::QuadOrder { d, b1, b2, entries } => {
            let q = match (entries, b1, b2) {
                (Some(e), None, None) => quad_entries(*d, e)?,
                (None, Some(b1), Some(b2)) => {
                    QuadOrderMatrix::companion_shape((*d).into(), (*b1).into(), (*b2).into())
                }
                _ => return Err(Failure::Usage("give either --b1 and --b2 or --entries".into())),
            };
            TorusModel::quad_order_model(&q)
        }
        Family::Gl2z { r, det } => TorusModel::gl2z_model(*r, *det),
        Family::PowerOfTwo { n, k } => TorusModel::power_of_two_family(*n, *k),
        Family::DegreeSix { a, b, pairing } => TorusModel::degree_six_model(*a, *b, pairing_arg(pairing)?),
    };
    model.map_err(Failure::domain)
}

/// Eight integers a00,b00,a01,b01,a10,b10,a11,b11 for entries a + b√−D.
fn quad_entries(d: i64, text: &str) -> Result<QuadOrderMatrix, Failure> {
    let v: Vec<i64> = text
        .split(',')
        .map(|s| s.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Usage(format!("entries {text:?} must be integers")))?;
    if v.len() != 8 {
        return Err(Failure::Usage("entries needs exactly eight integers".into()));
    }
    let e = |k: usize| QuadInt::from_i64(v[2 * k], v[2 * k + 1]);
    Ok(QuadOrderMatrix::new(d.into(), [[e(0), e(1)], [e(2), e(3)]]))
}

/// Outward dyadic rounding keeps printed endpoints short. Callers compute
/// at eps/2; the rounding adds under eps/128 at each end.
fn tidy(iv: Interval, eps: &BigRational) -> Interval {
    iv.round_out(4 * digits_for(eps) as u32 + 8)
}

fn model_report(m: &TorusModel, eps: &BigRational) -> Result<Output, Failure> {
    let half = eps / BigRational::from_integer(2.into());
    let entropy = tidy(m.entropy(&half), eps);
    Ok(Output::Json(json!({
        "model": to_json(m),
        "entropy": to_json(&entropy),
        "entropy_decimal": truncated_decimal(&entropy.lo, digits_for(eps)),
        "salem_factor": m.salem_factor().map(|c| print_poly(&c.s_poly)),
        "projective": m.is_projective().ok(),
        "picard_rank": m.picard_rank().ok().map(|r| to_json(&r)),
        "ns_charpoly": m.ns_charpoly().ok().map(|n| to_json(&n)),
    })))
}
