use std::fmt::Write as _;

use super::{Core, CoreCell};
use crate::error::{parse_err, Result};
use crate::rewriting::strip_comment;

/// `vertices N`, `rho E`, one `edge <id> <src> <dst>` per edge and one
/// `cell <top> <left> <right>` per cell.
pub fn format_core(c: &Core) -> String {
    let mut out = format!("vertices {}\nrho {}\n", c.vertex_count(), c.rho());
    for (i, &(s, d)) in c.edges().iter().enumerate() {
        let _ = writeln!(out, "edge {i} {s} {d}  # {}", c.edge_name(i));
    }
    for cell in c.cells() {
        let _ = writeln!(
            out,
            "cell {} {} {}",
            cell.top, cell.bottom[0], cell.bottom[1]
        );
    }
    out
}

pub fn parse_core(text: &str) -> Result<Core> {
    let mut vertices = None;
    let mut rho = None;
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    let mut cells = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let bad = || parse_err(line_no, format!("unrecognised line `{line}`"));
        let mut it = line.split_whitespace();
        let key = it.next().ok_or_else(bad)?;
        let nums: Vec<usize> = it
            .map(|t| t.parse().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        match (key, nums.as_slice()) {
            ("vertices", &[n]) => vertices = Some(n),
            ("rho", &[e]) => rho = Some(e),
            ("edge", &[id, s, d]) => edges.push((id, s, d)),
            ("cell", &[t, l, r]) => cells.push(CoreCell {
                top: t,
                bottom: [l, r],
            }),
            _ => return Err(bad()),
        }
    }
    let vertices = vertices.ok_or_else(|| parse_err(1, "missing `vertices` line"))?;
    let rho = rho.ok_or_else(|| parse_err(1, "missing `rho` line"))?;
    edges.sort();
    if edges.iter().enumerate().any(|(i, e)| e.0 != i) {
        return Err(parse_err(1, "edge ids must be 0, 1, 2, ... without gaps"));
    }
    let edges: Vec<(usize, usize)> = edges.into_iter().map(|(_, s, d)| (s, d)).collect();
    Core::from_parts(vertices, &edges, &cells, rho)
}
