//! Line-oriented text formats.
//!
//! `mdg`: a header `mdg <n>` followed by `a <tail> <head> [mult]` lines.
//! Families: one `inv: <ids>` line per set. In both, `#` starts a comment
//! and blank lines are ignored.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::MultiDigraph;
use crate::inversion::InversionFamily;

fn parse_err<T>(line: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, message: message.into() })
}

/// Non-empty content lines with their 1-based numbers, comments stripped.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

pub(crate) fn parse_number(line: usize, token: &str) -> Result<usize> {
    token.parse().or_else(|_| parse_err(line, format!("expected a number, found `{token}`")))
}

pub(crate) fn parse_ids(line: usize, text: &str) -> Result<Vec<usize>> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| parse_number(line, t))
        .collect()
}

pub fn parse_mdg(text: &str) -> Result<MultiDigraph> {
    let mut lines = content_lines(text);
    let Some((hline, header)) = lines.next() else {
        return parse_err(1, "missing `mdg <n>` header");
    };
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("mdg") {
        return parse_err(hline, "expected `mdg <n>` header");
    }
    let n = match (tokens.next(), tokens.next()) {
        (Some(t), None) => parse_number(hline, t)?,
        _ => return parse_err(hline, "expected `mdg <n>` header"),
    };
    let mut d = MultiDigraph::new(n);
    for (line, content) in lines {
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens[0] != "a" || !(3..=4).contains(&tokens.len()) {
            return parse_err(line, "expected `a <tail> <head> [mult]`");
        }
        let u = parse_number(line, tokens[1])?;
        let v = parse_number(line, tokens[2])?;
        let mult = match tokens.get(3) {
            Some(t) => parse_number(line, t)?,
            None => 1,
        };
        if mult == 0 {
            return parse_err(line, "multiplicity must be positive");
        }
        let mult = u32::try_from(mult).or_else(|_| parse_err(line, "multiplicity too large"))?;
        d.add_arcs(u, v, mult).or_else(|e| parse_err(line, e.to_string()))?;
    }
    Ok(d)
}

pub fn emit_mdg(d: &MultiDigraph) -> String {
    let mut out = format!("mdg {}\n", d.n());
    for (u, v, m) in d.arcs() {
        if m == 1 {
            writeln!(out, "a {u} {v}").unwrap();
        } else {
            writeln!(out, "a {u} {v} {m}").unwrap();
        }
    }
    out
}

/// Parses `inv:` lines; other lines are rejected.
pub fn parse_family(text: &str) -> Result<InversionFamily> {
    let mut sets = Vec::new();
    for (line, content) in content_lines(text) {
        let Some(rest) = content.strip_prefix("inv:") else {
            return parse_err(line, "expected `inv: <ids>`");
        };
        let ids = parse_ids(line, rest)?;
        let mut probe = InversionFamily::empty();
        probe.push(ids.clone()).or_else(|e| parse_err(line, e.to_string()))?;
        sets.push(ids);
    }
    InversionFamily::new(sets)
}

pub fn emit_family(f: &InversionFamily) -> String {
    f.to_string()
}
