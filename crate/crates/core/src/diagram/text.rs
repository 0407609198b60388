use std::fmt::Write as _;
use std::sync::Arc;

use super::graph::PlaneGraph;
use super::{Diagram, Move};
use crate::error::{parse_err, Result};
use crate::rewriting::{strip_comment, Direction, RewritingSystem};

/// `top: <word>` followed by one `@<offset> <rule> fwd|bwd` line per move.
pub fn format_diagram(d: &Diagram) -> String {
    let rs = d.system();
    let mut out = format!("top: {}\n", rs.format_word(d.top()));
    for m in d.moves() {
        let dir = match m.direction {
            Direction::Forward => "fwd",
            Direction::Backward => "bwd",
        };
        let _ = writeln!(out, "@{} {} {}", m.offset, m.rule, dir);
    }
    out
}

pub fn parse_diagram(system: Arc<RewritingSystem>, text: &str) -> Result<Diagram> {
    let mut top = None;
    let mut moves = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("top:") {
            if top.is_some() {
                return Err(parse_err(line_no, "duplicate top line"));
            }
            top = Some(
                system
                    .parse_word(rest)
                    .map_err(|e| parse_err(line_no, e.to_string()))?,
            );
            continue;
        }
        let bad = || {
            parse_err(
                line_no,
                format!("expected `@<offset> <rule> fwd|bwd`, got `{line}`"),
            )
        };
        let rest = line.strip_prefix('@').ok_or_else(bad)?;
        let parts: Vec<&str> = rest.split_whitespace().collect();
        let [offset, rule, dir] = parts[..] else {
            return Err(bad());
        };
        let direction = match dir {
            "fwd" => Direction::Forward,
            "bwd" => Direction::Backward,
            _ => return Err(bad()),
        };
        moves.push(Move {
            offset: offset.parse().map_err(|_| bad())?,
            rule: rule.parse().map_err(|_| bad())?,
            direction,
        });
    }
    let top = top.ok_or_else(|| parse_err(1, "missing `top:` line"))?;
    Diagram::new(system, top, moves)
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

impl Diagram {
    /// Graphviz rendering of the plane graph: vertices are points, edges carry
    /// letter names and each cell is a cluster around its inner vertices.
    pub fn to_dot(&self) -> String {
        let g = PlaneGraph::build(self, false);
        let rs = self.system();
        let mut out = String::from("digraph diagram {\n  rankdir=LR;\n  node [shape=point];\n");
        let mut inner = vec![None; g.vertex_count];
        for (c, cell) in g.cells.iter().enumerate() {
            for &e in &cell.bottom[..cell.bottom.len() - 1] {
                inner[g.edges[e].dst] = Some(c);
            }
        }
        for (c, cell) in g.cells.iter().enumerate() {
            let _ = writeln!(
                out,
                "  subgraph cluster_{c} {{ label=\"{}\"; style=dashed;",
                escape(&match cell.direction {
                    Direction::Forward => rs.format_rule(cell.rule),
                    Direction::Backward => format!("({})⁻¹", rs.format_rule(cell.rule)),
                })
            );
            for (v, owner) in inner.iter().enumerate() {
                if *owner == Some(c) {
                    let _ = writeln!(out, "    v{v};");
                }
            }
            let _ = writeln!(out, "  }}");
        }
        for (v, owner) in inner.iter().enumerate() {
            if owner.is_none() {
                let _ = writeln!(out, "  v{v};");
            }
        }
        for e in &g.edges {
            let _ = writeln!(
                out,
                "  v{} -> v{} [label=\"{}\"];",
                e.src,
                e.dst,
                escape(rs.name(e.label))
            );
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewriting::Word;

    #[test]
    fn round_trip() {
        let rs = Arc::new(RewritingSystem::dunce());
        let text = "top: x\n@0 0 bwd\n@0 0 bwd\n@1 0 fwd\n@0 0 fwd\n";
        let d = parse_diagram(rs.clone(), text).unwrap();
        assert_eq!(d.cell_count(), 4);
        assert_eq!(d.bottom(), &Word::from_ids(&[0]));
        assert_eq!(format_diagram(&d), text);
        assert!(parse_diagram(rs.clone(), "top: x\n@0 0 fwd").is_err());
        assert!(parse_diagram(rs, "@0 0 fwd").is_err());
    }

    #[test]
    fn dot_mentions_every_edge() {
        let rs = Arc::new(RewritingSystem::dunce());
        let d = parse_diagram(rs, "top: x\n@0 0 bwd\n@0 0 fwd").unwrap();
        let dot = d.to_dot();
        assert!(dot.starts_with("digraph"));
        assert_eq!(dot.matches("-> v").count(), 4);
    }
}
