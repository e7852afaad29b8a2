//! Plain-text formats for distance matrices and weighted split systems.
//!
//! Distance matrix:
//!
//! ```text
//! # optional comments
//! 3
//! a 0 1 3/2
//! b 1 0 2.5
//! c 3/2 2.5 0
//! ```
//!
//! Split system (the weight clause defaults to 1):
//!
//! ```text
//! 5
//! a b c d e
//! a,b | c,d,e : 3/2
//! c | a,b,d,e
//! ```

use std::fmt::Write as _;

use num_traits::One;

use crate::distance::DistanceMatrix;
use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::split::Split;
use crate::system::{SplitSystem, WeightedSplitSystem};

/// Non-blank, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_count<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>) -> Result<(usize, usize)> {
    let (line, text) = lines.next().ok_or_else(|| parse_err(0, "missing element count"))?;
    let n: usize = text.parse().map_err(|_| parse_err(line, format!("expected element count, got {text:?}")))?;
    if n == 0 {
        return Err(parse_err(line, "element count must be positive"));
    }
    Ok((line, n))
}

pub fn parse_distance_matrix(text: &str) -> Result<DistanceMatrix> {
    let mut lines = content_lines(text);
    let (count_line, n) = parse_count(&mut lines)?;
    let mut labels = Vec::with_capacity(n);
    let mut rows = Vec::with_capacity(n);
    let mut last_line = count_line;
    for _ in 0..n {
        let (line, row) = lines
            .next()
            .ok_or_else(|| parse_err(last_line, format!("expected {n} matrix rows")))?;
        last_line = line;
        let mut fields = row.split_whitespace();
        let label = fields.next().expect("line is non-empty");
        let values = fields
            .map(|f| parse_rational(f).map_err(|_| parse_err(line, format!("bad value {f:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if values.len() != n {
            return Err(parse_err(line, format!("expected {n} values, got {}", values.len())));
        }
        labels.push(label.to_string());
        rows.push(values);
    }
    if let Some((line, _)) = lines.next() {
        return Err(parse_err(line, "unexpected trailing content"));
    }
    let ground = GroundSet::new(labels).map_err(|e| parse_err(count_line, e.to_string()))?;
    DistanceMatrix::new(ground, rows)
}

pub fn write_distance_matrix(d: &DistanceMatrix) -> String {
    let mut out = String::new();
    writeln!(out, "{}", d.n()).unwrap();
    for i in 0..d.n() {
        out.push_str(d.ground().label(i));
        for v in d.row(i) {
            out.push(' ');
            out.push_str(&format_rational(v));
        }
        out.push('\n');
    }
    out
}

pub fn parse_split_system(text: &str) -> Result<WeightedSplitSystem> {
    let mut lines = content_lines(text);
    let (line, first) = lines.next().ok_or_else(|| parse_err(0, "missing element count"))?;
    let n: usize = first
        .parse()
        .map_err(|_| parse_err(line, format!("expected element count, got {first:?}")))?;
    let (label_line, label_text) = lines.next().ok_or_else(|| parse_err(line, "missing label line"))?;
    let labels: Vec<&str> = label_text.split_whitespace().collect();
    if labels.len() != n {
        return Err(parse_err(label_line, format!("expected {n} labels, got {}", labels.len())));
    }
    let ground = GroundSet::new(labels).map_err(|e| parse_err(label_line, e.to_string()))?;
    let mut entries: Vec<(Split, Rational)> = Vec::new();
    for (line, text) in lines {
        let (body, weight) = match text.split_once(':') {
            Some((body, w)) => (body, parse_rational(w).map_err(|e| parse_err(line, e.to_string()))?),
            None => (text, Rational::one()),
        };
        let (left, right) = body
            .split_once('|')
            .ok_or_else(|| parse_err(line, "expected `A | B`"))?;
        let side = |part: &str| -> Result<Vec<usize>> {
            part.split(',')
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .map(|l| ground.index_of(l).ok_or_else(|| parse_err(line, format!("unknown label {l:?}"))))
                .collect()
        };
        let split = Split::from_sides(n, &side(left)?, &side(right)?).map_err(|e| parse_err(line, e.to_string()))?;
        if entries.iter().any(|(s, _)| *s == split) {
            return Err(parse_err(line, format!("duplicate split {}", split.display(&ground))));
        }
        entries.push((split, weight));
    }
    WeightedSplitSystem::new(ground, entries)
}

pub fn write_split_system(ws: &WeightedSplitSystem) -> String {
    let mut out = String::new();
    writeln!(out, "{}", ws.n()).unwrap();
    writeln!(out, "{}", ws.ground().labels().join(" ")).unwrap();
    for (split, w) in ws.iter() {
        writeln!(out, "{} : {}", split.display(ws.ground()), format_rational(w)).unwrap();
    }
    out
}

/// Unweighted systems are written with weight 1 throughout.
pub fn write_unweighted(system: &SplitSystem) -> String {
    write_split_system(&system.with_unit_weights())
}
