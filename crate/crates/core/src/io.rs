//! File formats.
//!
//! Matrix text format: a header line `n` or `n <classical|highdim>` followed
//! by `n` rows of `n` whitespace-separated integers. JSON alternative:
//! `{"n": 4, "rows": [[...], ...], "parity": "classical"}` (parity optional).
//! Blank lines and lines starting with `#` are ignored.
//!
//! Basis files use the same layout with a header `g n` and `g` rows of
//! length `n`, or JSON `{"rows": [[...], ...]}`.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exact_math::algebraic::{bigint_to_json, json_to_bigint};
use crate::exact_math::format_rational;
use crate::matrix::{IntMatrix, Matrix};
use crate::seifert::{MetabolizerCertificate, Parity, SeifertMatrix, SignatureStepFunction};

/// A parsed matrix file. `parity` is `None` when the file does not say.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFile {
    pub matrix: IntMatrix,
    pub parity: Option<Parity>,
}

fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

fn parse_int(tok: &str) -> Result<BigInt> {
    BigInt::from_str(tok).map_err(|_| Error::Parse(format!("not an integer: {tok:?}")))
}

fn parse_usize(tok: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::Parse(format!("not a dimension: {tok:?}")))
}

fn parse_rows<'a>(lines: impl Iterator<Item = &'a str>, rows: usize, cols: usize) -> Result<IntMatrix> {
    let data: Vec<Vec<BigInt>> = lines
        .map(|l| l.split_whitespace().map(parse_int).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    if data.len() != rows {
        return Err(Error::Parse(format!("expected {rows} rows, found {}", data.len())));
    }
    if let Some((i, r)) = data.iter().enumerate().find(|(_, r)| r.len() != cols) {
        return Err(Error::Parse(format!(
            "row {} has {} entries, expected {cols}",
            i + 1,
            r.len()
        )));
    }
    Matrix::from_rows(data).map_err(|e| Error::Parse(e.to_string()))
}

fn json_rows(v: &Value) -> Result<Vec<Vec<BigInt>>> {
    let rows = v
        .get("rows")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing \"rows\" array".into()))?;
    rows.iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::Parse("row is not an array".into()))?
                .iter()
                .map(json_to_bigint)
                .collect::<Result<Vec<_>>>()
        })
        .collect()
}

pub fn parse_matrix(text: &str) -> Result<MatrixFile> {
    if text.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let rows = json_rows(&v)?;
        if let Some(n) = v.get("n") {
            let n = n.as_u64().ok_or_else(|| Error::Parse("\"n\" is not a count".into()))?;
            if rows.len() as u64 != n || rows.iter().any(|r| r.len() as u64 != n) {
                return Err(Error::Parse(format!("rows do not form a {n}×{n} matrix")));
            }
        }
        let parity = match v.get("parity") {
            None | Some(Value::Null) => None,
            Some(p) => Some(
                p.as_str()
                    .ok_or_else(|| Error::Parse("\"parity\" is not a string".into()))?
                    .parse()?,
            ),
        };
        let matrix = Matrix::from_rows(rows).map_err(|e| Error::Parse(e.to_string()))?;
        return Ok(MatrixFile { matrix, parity });
    }
    let mut lines = content_lines(text);
    let header = lines.next().ok_or_else(|| Error::Parse("empty matrix file".into()))?;
    let mut toks = header.split_whitespace();
    let n = parse_usize(toks.next().unwrap_or_default())?;
    let parity = toks.next().map(Parity::from_str).transpose()?;
    if let Some(extra) = toks.next() {
        return Err(Error::Parse(format!("unexpected header token {extra:?}")));
    }
    let matrix = parse_rows(lines, n, n)?;
    Ok(MatrixFile { matrix, parity })
}

pub fn format_matrix(k: &SeifertMatrix) -> String {
    let mut out = format!("{} {}\n", k.dim(), k.parity());
    out.push_str(&format_rows(k.matrix()));
    out
}

/// Rows of a matrix, one per line, space separated.
pub fn format_rows(m: &IntMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    n: usize,
    parity: Parity,
    rows: Vec<Vec<Value>>,
}

pub fn matrix_to_json(k: &SeifertMatrix) -> Value {
    let rows = k
        .matrix()
        .to_rows()
        .iter()
        .map(|r| r.iter().map(bigint_to_json).collect())
        .collect();
    serde_json::to_value(MatrixJson { n: k.dim(), parity: k.parity(), rows }).expect("serializable")
}

pub fn parse_basis(text: &str) -> Result<MetabolizerCertificate> {
    if text.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let rows = Matrix::from_rows(json_rows(&v)?).map_err(|e| Error::Parse(e.to_string()))?;
        return Ok(MetabolizerCertificate { rows });
    }
    let mut lines = content_lines(text);
    let header = lines.next().ok_or_else(|| Error::Parse("empty basis file".into()))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    let [g, n] = toks[..] else {
        return Err(Error::Parse("basis header must be \"g n\"".into()));
    };
    let rows = parse_rows(lines, parse_usize(g)?, parse_usize(n)?)?;
    Ok(MetabolizerCertificate { rows })
}

pub fn format_basis(cert: &MetabolizerCertificate) -> String {
    format!("{} {}\n{}", cert.rows.rows(), cert.rows.cols(), format_rows(&cert.rows))
}

/// Constant-first comma list, e.g. `1,-1,1`.
pub fn parse_poly_arg(s: &str) -> Result<crate::exact_math::IntPolynomial> {
    crate::exact_math::IntPolynomial::parse_csv(s)
}

pub fn step_function_to_json(sf: &SignatureStepFunction) -> Value {
    serde_json::to_value(sf).expect("serializable")
}

pub fn step_function_from_json(text: &str) -> Result<SignatureStepFunction> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Plot-ready CSV: `kind,c_lo,c_hi,value` with one `interval` row per open
/// interval (endpoints as decimals, `-1`/`1` at the ends) and one `point`
/// row per breakpoint (`c_lo = c_hi`). Exact breakpoints are given by
/// their isolating intervals in the trailing `exact` column.
pub fn step_function_to_csv(sf: &SignatureStepFunction) -> String {
    let mut out = String::from("kind,c_lo,c_hi,value,exact\n");
    let ends: Vec<String> = std::iter::once("-1".to_string())
        .chain(sf.breakpoints.iter().map(|b| format!("{:.12}", b.to_f64())))
        .chain(std::iter::once("1".to_string()))
        .collect();
    for (i, v) in sf.interval_values.iter().enumerate() {
        let _ = writeln!(out, "interval,{},{},{},", ends[i], ends[i + 1], v);
        if let (Some(b), Some(p)) = (sf.breakpoints.get(i), sf.point_values.get(i)) {
            let exact = match b.as_rational() {
                Some(r) => format_rational(&r),
                None => format!(
                    "root of {} in ({} {})",
                    b.minpoly().to_csv().replace(',', " "),
                    format_rational(b.lo()),
                    format_rational(b.hi())
                ),
            };
            let _ = writeln!(out, "point,{},{},{},{}", ends[i + 1], ends[i + 1], p, exact);
        }
    }
    out
}
