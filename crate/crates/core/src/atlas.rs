//! Sweeps of monic reciprocal polynomials in a coefficient box, classified
//! and written as CSV. Output depends only on the inputs, not on the worker
//! count.

use std::cmp::Ordering;
use std::io::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::classify::{realizable, ClassifyError, Finiteness, Projectivity};
use crate::numeric::{cmp_intervals, Interval};
use crate::poly::{cmp_poly, print_poly, IntPoly};
use crate::salem::{is_salem, lambda_approx, SalemCertificate};

pub const CSV_HEADER: [&str; 9] = [
    "s_poly",
    "degree",
    "lambda",
    "case",
    "finiteness",
    "witness_count",
    "example_model",
    "projective_types",
    "picard_ranks",
];

/// Digits after the decimal point in the lambda column.
pub const LAMBDA_DIGITS: usize = 12;

#[derive(Debug, Error)]
pub enum AtlasError {
    #[error("degree must be 2, 4 or 6, got {0}")]
    BadDegree(usize),
    #[error("max_coeff must be at least 1")]
    BadBound,
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AtlasRow {
    pub s_poly: String,
    pub degree: usize,
    /// λ truncated (not rounded) to 12 decimals: λ lies in [lambda, lambda + 10^-12).
    pub lambda: String,
    pub case: String,
    pub finiteness: String,
    pub witness_count: usize,
    pub example_model: String,
    pub projective_types: String,
    pub picard_ranks: String,
}

/// Row plus the data needed to sort it.
struct Entry {
    cert: SalemCertificate,
    row: AtlasRow,
}

/// Monic reciprocal polynomials of the given even degree with every
/// coefficient in [-bound, bound], in lexicographic order of the free
/// coefficients c_1, ..., c_(degree/2).
pub fn reciprocal_box(degree: usize, bound: i64) -> Vec<IntPoly> {
    let half = degree / 2;
    let side = (2 * bound + 1) as usize;
    let total = side.pow(half as u32);
    (0..total)
        .map(|mut idx| {
            let mut free = vec![0i64; half];
            for slot in free.iter_mut().rev() {
                *slot = (idx % side) as i64 - bound;
                idx /= side;
            }
            let mut desc = vec![1i64];
            desc.extend(&free);
            for k in (0..half.saturating_sub(1)).rev() {
                desc.push(free[k]);
            }
            desc.push(1);
            IntPoly::from_desc(&desc)
        })
        .collect()
}

/// floor(λ 10^12) / 10^12 as a decimal, certified by narrowing λ until
/// both ends of its interval truncate to the same digits.
pub fn lambda_decimal(cert: &SalemCertificate) -> String {
    let scale = BigRational::from_integer(num_traits::pow(BigInt::from(10), LAMBDA_DIGITS));
    let mut width = BigRational::new(BigInt::one(), BigInt::one() << 48);
    loop {
        let iv = lambda_approx(cert, &width);
        let lo = (&iv.lo * &scale).floor();
        if lo == (&iv.hi * &scale).floor() && iv.hi != (&lo + BigRational::one()) / &scale {
            return crate::numeric::truncated_decimal(&iv.lo, LAMBDA_DIGITS);
        }
        width /= BigRational::from_integer(BigInt::from(1024));
    }
}

fn classify_row(p: &IntPoly) -> Result<Option<Entry>, AtlasError> {
    let Ok(cert) = is_salem(p) else {
        return Ok(None);
    };
    let report = realizable(p)?;
    let witnesses = report.witnesses.unwrap_or_default();
    let mut seen: Vec<Projectivity> = witnesses
        .iter()
        .flat_map(|w| w.classes.iter().map(|c| c.projectivity))
        .collect();
    seen.sort();
    seen.dedup();
    let ranks: Vec<String> = seen
        .iter()
        .filter_map(|t| report.picard_ranks.get(t).map(|r| format!("{}={r}", t.as_str())))
        .collect();
    let finiteness = match &report.finiteness {
        Some(f) => f.to_string(),
        None => "not_realizable".to_string(),
    };
    let example_model = witnesses
        .first()
        .and_then(|w| w.classes.first())
        .map(|c| c.model.to_string())
        .unwrap_or_default();
    let row = AtlasRow {
        s_poly: print_poly(p),
        degree: cert.degree,
        lambda: lambda_decimal(&cert),
        case: report.case_tag.to_string(),
        finiteness,
        witness_count: witnesses.len(),
        example_model,
        projective_types: seen.iter().map(|t| t.as_str()).collect::<Vec<_>>().join(";"),
        picard_ranks: ranks.join(";"),
    };
    Ok(Some(Entry { cert, row }))
}

/// Exact order of two Salem numbers by refining both intervals.
fn cmp_lambda(a: &SalemCertificate, b: &SalemCertificate) -> Ordering {
    if a.s_poly == b.s_poly {
        return Ordering::Equal;
    }
    let (mut x, mut y): (Interval, Interval) = (a.lambda_interval.clone(), b.lambda_interval.clone());
    let mut width = BigRational::new(BigInt::one(), BigInt::one() << 24);
    loop {
        if let Some(o) = cmp_intervals(&x, &y) {
            return o;
        }
        x = lambda_approx(a, &width);
        y = lambda_approx(b, &width);
        width /= BigRational::from_integer(BigInt::from(1 << 16));
    }
}

/// Classifies every Salem polynomial in the box, using `workers` threads.
/// Rows are sorted by (degree, λ, coefficients).
pub fn enumerate(degree: usize, max_coeff: i64, workers: usize) -> Result<Vec<AtlasRow>, AtlasError> {
    if ![2, 4, 6].contains(&degree) {
        return Err(AtlasError::BadDegree(degree));
    }
    if max_coeff < 1 {
        return Err(AtlasError::BadBound);
    }
    let polys = reciprocal_box(degree, max_coeff);
    let workers = workers.max(1);
    let results: Vec<Result<Vec<Entry>, AtlasError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let polys = &polys;
                scope.spawn(move || {
                    let mut out = Vec::new();
                    for p in polys.iter().skip(w).step_by(workers) {
                        if let Some(e) = classify_row(p)? {
                            out.push(e);
                        }
                    }
                    Ok(out)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut entries = Vec::new();
    for r in results {
        entries.extend(r?);
    }
    entries.sort_by(|a, b| {
        a.row
            .degree
            .cmp(&b.row.degree)
            .then_with(|| cmp_lambda(&a.cert, &b.cert))
            .then_with(|| cmp_poly(&a.cert.s_poly, &b.cert.s_poly))
    });
    Ok(entries.into_iter().map(|e| e.row).collect())
}

/// Writes the header and rows with "\n" line endings.
pub fn write_csv<W: Write>(rows: &[AtlasRow], out: W) -> Result<(), AtlasError> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn to_csv_string(rows: &[AtlasRow]) -> Result<String, AtlasError> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is UTF-8"))
}

impl Finiteness {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Finiteness::InfiniteFamily { .. })
    }
}
