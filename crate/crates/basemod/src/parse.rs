//! Text input formats for matroids.
//!
//! Four formats, chosen by a format flag rather than sniffing:
//!
//! * `graph`   — one edge per line: `u v label` (whitespace separated).
//! * `linear`  — one matrix row per line, rational entries like `2` or `-1/3`;
//!               columns become elements labelled `e1..en`.
//! * `uniform` — a single line `uniform k n`.
//! * `bases`   — one base per line as comma-separated element labels; the
//!               ground set is the union in first-appearance order.
//!
//! Blank lines and `#` comments are ignored everywhere. Errors carry the
//! 1-based line number of the offending line.

use std::str::FromStr;

use num::Zero;

use crate::error::{Error, Result};
use crate::matroid::{GroundSet, Mask, Matroid};
use crate::Rat;

/// Input format selector, mirroring the CLI `--format` flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Graph,
    Linear,
    Uniform,
    Bases,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "graph" => Ok(Format::Graph),
            "linear" => Ok(Format::Linear),
            "uniform" => Ok(Format::Uniform),
            "bases" => Ok(Format::Bases),
            other => Err(Error::Domain(format!(
                "unknown format {other:?}; expected graph, linear, uniform, or bases"
            ))),
        }
    }
}

/// Parse a matroid in the given format.
pub fn parse(format: Format, text: &str) -> Result<Matroid> {
    match format {
        Format::Graph => parse_graph(text),
        Format::Linear => parse_linear(text),
        Format::Uniform => parse_uniform(text),
        Format::Bases => parse_bases(text),
    }
}

/// Non-comment lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// `p/q` or plain integer `p`, denominator positive and nonzero.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let p: num::BigInt = num.parse().ok()?;
    let q: num::BigInt = den.parse().ok()?;
    if q.is_zero() {
        return None;
    }
    Some(Rat::new(p, q))
}

fn parse_graph(text: &str) -> Result<Matroid> {
    let mut edges = Vec::new();
    let mut seen_labels: Vec<String> = Vec::new();
    for (lineno, line) in content_lines(text) {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let [u, v, label] = tokens[..] else {
            return Err(err(lineno, format!("expected `u v label`, got {line:?}")));
        };
        if u == v {
            return Err(err(lineno, format!("edge {label:?} is a self-loop")));
        }
        if seen_labels.iter().any(|l| l == label) {
            return Err(err(lineno, format!("duplicate edge label {label:?}")));
        }
        seen_labels.push(label.to_string());
        edges.push((u.to_string(), v.to_string(), label.to_string()));
    }
    if edges.is_empty() {
        return Err(err(1, "no edges in input"));
    }
    Matroid::graphic(&edges)
}

fn parse_linear(text: &str) -> Result<Matroid> {
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut width = 0usize;
    for (lineno, line) in content_lines(text) {
        let mut row = Vec::new();
        for tok in line.split_whitespace() {
            let v = parse_rat(tok)
                .ok_or_else(|| err(lineno, format!("bad rational {tok:?}")))?;
            row.push(v);
        }
        if rows.is_empty() {
            width = row.len();
        } else if row.len() != width {
            return Err(err(
                lineno,
                format!("row has {} entries, expected {width}", row.len()),
            ));
        }
        rows.push(row);
    }
    if rows.is_empty() || width == 0 {
        return Err(err(1, "no matrix rows in input"));
    }
    let cols: Vec<Vec<Rat>> = (0..width)
        .map(|j| rows.iter().map(|r| r[j].clone()).collect())
        .collect();
    let labels = (1..=width).map(|i| format!("e{i}")).collect();
    Matroid::linear(GroundSet::new(labels)?, cols)
}

fn parse_uniform(text: &str) -> Result<Matroid> {
    let mut lines = content_lines(text);
    let Some((lineno, line)) = lines.next() else {
        return Err(err(1, "empty uniform input; expected `uniform k n`"));
    };
    if let Some((extra, _)) = lines.next() {
        return Err(err(extra, "unexpected extra line in uniform input"));
    }
    let tokens: Vec<&str> = line.split_whitespace().collect();
    let [word, k, n] = tokens[..] else {
        return Err(err(lineno, format!("expected `uniform k n`, got {line:?}")));
    };
    if word != "uniform" {
        return Err(err(lineno, format!("expected leading `uniform`, got {word:?}")));
    }
    let k: u64 = k
        .parse()
        .map_err(|_| err(lineno, format!("bad rank {k:?}")))?;
    let n: usize = n
        .parse()
        .map_err(|_| err(lineno, format!("bad size {n:?}")))?;
    Matroid::uniform(k, n)
}

fn parse_bases(text: &str) -> Result<Matroid> {
    let mut labels: Vec<String> = Vec::new();
    let mut raw_bases: Vec<(usize, Vec<usize>)> = Vec::new();
    for (lineno, line) in content_lines(text) {
        let mut base = Vec::new();
        for tok in line.split(',') {
            let name = tok.trim();
            if name.is_empty() {
                return Err(err(lineno, "empty element label in base"));
            }
            let idx = match labels.iter().position(|l| l == name) {
                Some(i) => i,
                None => {
                    labels.push(name.to_string());
                    labels.len() - 1
                }
            };
            if base.contains(&idx) {
                return Err(err(lineno, format!("duplicate element {name:?} in base")));
            }
            base.push(idx);
        }
        raw_bases.push((lineno, base));
    }
    if raw_bases.is_empty() {
        return Err(err(1, "no bases in input"));
    }
    if labels.len() > 63 {
        return Err(Error::Domain(format!(
            "ground set has {} elements; at most 63 are supported",
            labels.len()
        )));
    }
    let masks: Vec<Mask> = raw_bases
        .iter()
        .map(|(_, b)| b.iter().fold(0u64, |acc, &i| acc | (1 << i)))
        .collect();
    Matroid::from_bases(GroundSet::new(labels)?, masks)
}

/// Render a matroid back into its natural input format (used by the random
/// instance generator). Graphic matroids render as edge lists.
pub fn render_graph(edges: &[(String, String, String)]) -> String {
    let mut out = String::new();
    for (u, v, l) in edges {
        out.push_str(&format!("{u} {v} {l}\n"));
    }
    out
}

/// Render a rational matrix as a `linear` input (rows of `p/q` tokens).
pub fn render_linear(cols: &[Vec<Rat>]) -> String {
    let rows = cols.first().map(Vec::len).unwrap_or(0);
    let mut out = String::new();
    for i in 0..rows {
        let row: Vec<String> = cols.iter().map(|c| fmt_rat(&c[i])).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Lowest-terms string form: `p` when integral, else `p/q`.
pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
