//! Plain-text form of a rewriting system:
//!
//! ```text
//! alphabet: ρ a b c
//! distinguished: ρ
//! a b -> ρ
//! a c -> a   # comment
//! ```
//!
//! Without an `alphabet:` header, the distinguished letter comes first and the
//! remaining letters are numbered in order of first appearance.

use std::fmt::Write as _;

use super::system::RewritingSystem;
use super::word::{Letter, Word};
use crate::error::{parse_err, Result};

pub(crate) fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

pub fn parse_system(text: &str) -> Result<RewritingSystem> {
    let mut alphabet: Option<Vec<String>> = None;
    let mut distinguished: Option<(usize, String)> = None;
    let mut rules: Vec<(usize, Vec<String>, Vec<String>)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("alphabet:") {
            if alphabet.is_some() {
                return Err(parse_err(line_no, "duplicate alphabet header"));
            }
            let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            for (j, n) in names.iter().enumerate() {
                if names[..j].contains(n) {
                    return Err(parse_err(line_no, format!("letter `{n}` listed twice")));
                }
            }
            alphabet = Some(names);
        } else if let Some(rest) = line.strip_prefix("distinguished:") {
            let name = rest.trim();
            if name.is_empty() || name.contains(char::is_whitespace) {
                return Err(parse_err(line_no, "expected a single distinguished letter"));
            }
            distinguished = Some((line_no, name.to_string()));
        } else if let Some((l, r)) = line.split_once("->") {
            let lhs: Vec<String> = l.split_whitespace().map(str::to_string).collect();
            let rhs: Vec<String> = r.split_whitespace().map(str::to_string).collect();
            if lhs.is_empty() || rhs.is_empty() {
                return Err(parse_err(line_no, "rule with an empty side"));
            }
            rules.push((line_no, lhs, rhs));
        } else {
            return Err(parse_err(line_no, format!("cannot parse `{line}`")));
        }
    }

    let names = match alphabet {
        Some(a) => a,
        None => {
            let mut names: Vec<String> = Vec::new();
            let mut see = |n: &String| {
                if !names.contains(n) {
                    names.push(n.clone());
                }
            };
            if let Some((_, d)) = &distinguished {
                see(d);
            }
            for (_, l, r) in &rules {
                l.iter().chain(r).for_each(&mut see);
            }
            names
        }
    };
    let lookup = |line: usize, n: &str| -> Result<Letter> {
        names
            .iter()
            .position(|m| m == n)
            .map(|i| Letter(i as u32))
            .ok_or_else(|| parse_err(line, format!("letter `{n}` is not in the alphabet")))
    };
    let mut built = Vec::with_capacity(rules.len());
    for (line, l, r) in &rules {
        let lhs: Word = l.iter().map(|n| lookup(*line, n)).collect::<Result<_>>()?;
        let rhs: Word = r.iter().map(|n| lookup(*line, n)).collect::<Result<_>>()?;
        built.push((lhs, rhs));
    }
    let dist = match &distinguished {
        Some((line, d)) => Some(lookup(*line, d)?),
        None => None,
    };
    RewritingSystem::new(names, built, dist)
}

pub fn format_system(rs: &RewritingSystem) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "alphabet: {}", rs.names().join(" "));
    if let Some(d) = rs.distinguished() {
        let _ = writeln!(out, "distinguished: {}", rs.name(d));
    }
    for r in rs.rules() {
        let _ = writeln!(out, "{}", rs.format_rule(r.id));
    }
    out
}
