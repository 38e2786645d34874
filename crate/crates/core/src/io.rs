//! Text formats.
//!
//! Function file:
//!
//! ```text
//! n=3
//! 011 0.5
//! 101 -1.25
//! ```
//!
//! Set file:
//!
//! ```text
//! n=3
//! 011
//! 101
//! ```
//!
//! Bitstrings have exactly `n` characters and are written most significant
//! coordinate first, like a `0b` literal. Omitted points of a function file
//! are zero. Blank lines and lines starting with `#` are ignored. Values are
//! written with 17 significant digits, which round-trips every `f64`.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::compression::CompressionTrace;
use crate::hypercube::{Point, PointSet};
use crate::spectral::DenseFunction;
use crate::{Error, Result, MAX_DIM};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Non-blank, non-comment lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_header(first: Option<(usize, &str)>) -> Result<u32> {
    let (line, text) = first.ok_or_else(|| parse_err(1, "missing header \"n=<int>\""))?;
    let value = text
        .strip_prefix("n=")
        .ok_or_else(|| parse_err(line, format!("expected header \"n=<int>\", found {text:?}")))?;
    let n: u32 = value
        .trim()
        .parse()
        .map_err(|_| parse_err(line, format!("invalid dimension {value:?}")))?;
    if n > MAX_DIM {
        return Err(parse_err(line, format!("dimension {n} exceeds {MAX_DIM}")));
    }
    Ok(n)
}

fn parse_bits(token: &str, n: u32, line: usize) -> Result<Point> {
    if token.len() != n as usize {
        return Err(parse_err(line, format!("bitstring {token:?} has length {}, expected {n}", token.len())));
    }
    if !token.bytes().all(|b| b == b'0' || b == b'1') {
        return Err(parse_err(line, format!("bitstring {token:?} has characters other than 0/1")));
    }
    if n == 0 {
        return Ok(Point(0));
    }
    Ok(Point(u64::from_str_radix(token, 2).expect("validated binary digits")))
}

/// Parses a function file.
pub fn parse_function(text: &str) -> Result<DenseFunction> {
    let mut lines = content_lines(text);
    let n = parse_header(lines.next())?;
    let mut f = DenseFunction::zeros(n)?;
    let mut seen = HashSet::new();
    let mut any_nonzero = false;
    for (line, content) in lines.by_ref() {
        let mut tokens = content.split_whitespace();
        let (bits, value) = match (n, tokens.next(), tokens.next(), tokens.next()) {
            (_, Some(b), Some(v), None) => (b, v),
            (0, Some(v), None, None) => ("", v),
            _ => return Err(parse_err(line, "expected \"<bitstring> <value>\"")),
        };
        let x = parse_bits(bits, n, line)?;
        let v: f64 = value
            .parse()
            .map_err(|_| parse_err(line, format!("invalid value {value:?}")))?;
        if !v.is_finite() {
            return Err(parse_err(line, format!("non-finite value {value:?}")));
        }
        if !seen.insert(x) {
            return Err(parse_err(line, format!("duplicate point {bits}")));
        }
        any_nonzero |= v != 0.0;
        f.set(x, v);
    }
    if !any_nonzero {
        return Err(parse_err(0, "function has no nonzero value"));
    }
    Ok(f)
}

/// Serializes the points whose value is not `+0.0`.
pub fn write_function(f: &DenseFunction) -> String {
    let mut out = format!("n={}\n", f.dim());
    for (i, v) in f.values().iter().enumerate() {
        if v.to_bits() != 0 {
            let _ = writeln!(out, "{} {:.16e}", Point(i as u64).to_bitstring(f.dim()), v);
        }
    }
    out
}

/// Parses a set file.
pub fn parse_set(text: &str) -> Result<PointSet> {
    let mut lines = content_lines(text);
    let n = parse_header(lines.next())?;
    let mut pts = Vec::new();
    let mut seen = HashSet::new();
    for (line, content) in lines.by_ref() {
        let x = parse_bits(content, n, line)?;
        if !seen.insert(x) {
            return Err(parse_err(line, format!("duplicate point {content}")));
        }
        pts.push(x);
    }
    PointSet::new(n, pts)
}

pub fn write_set(set: &PointSet) -> String {
    let mut out = format!("n={}\n", set.dim());
    for p in set.points() {
        let _ = writeln!(out, "{}", p.to_bitstring(set.dim()));
    }
    out
}

/// CSV with columns `sweep,pair_i,pair_j,max_change,u2_fourth,l2`.
pub fn write_trace_csv(trace: &CompressionTrace) -> String {
    let mut out = String::from("sweep,pair_i,pair_j,max_change,u2_fourth,l2\n");
    for r in &trace.records {
        let _ = writeln!(
            out,
            "{},{},{},{:.16e},{:.16e},{:.16e}",
            r.sweep, r.pair_i, r.pair_j, r.max_change, r.u2_fourth, r.l2
        );
    }
    out
}
