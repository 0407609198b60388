use super::graph::{GCell, PlaneGraph};
use super::{Diagram, Move};
use crate::error::{Error, Result};
use crate::rewriting::{Direction, Letter, RewritingSystem, SquierEdge, Word};

/// `Δ = Δ⁺ ∘ Δ⁻` along the horizontal path.
#[derive(Clone, Debug)]
pub struct SphericalSplit {
    pub positive: Diagram,
    pub negative: Diagram,
    pub horizontal: Word,
}

fn expanding_cell(c: &GCell) -> bool {
    c.top.len() == 1 && c.bottom.len() == 2
}

fn expanding_move(rs: &RewritingSystem, m: &Move) -> bool {
    let r = &rs.rules()[m.rule];
    let (top, bottom) = match m.direction {
        Direction::Forward => (&r.lhs, &r.rhs),
        Direction::Backward => (&r.rhs, &r.lhs),
    };
    top.len() == 1 && bottom.len() == 2
}

impl Diagram {
    /// Splits a reduced spherical diagram over a tree system into its
    /// expanding and reducing halves.
    pub fn split_spherical(&self) -> Result<SphericalSplit> {
        let rs = self.system();
        rs.require_tree()?;
        if !self.is_spherical() {
            return Err(Error::NotSpherical {
                top: rs.format_word(self.top()),
                bottom: rs.format_word(self.bottom()),
            });
        }
        let g = PlaneGraph::build(self, true);
        if g.cancelled > 0 {
            return Err(Error::MalformedDiagram("diagram is not reduced".into()));
        }
        let (plus, mid) = g.emit_levels(g.top.clone(), expanding_cell);
        let (minus, end) = g.emit_levels(mid.clone(), |c| !expanding_cell(c));
        if plus.len() + minus.len() != g.live_cells() || end != g.boundary {
            return Err(Error::MalformedDiagram(
                "expanding and reducing cells are interleaved".into(),
            ));
        }
        if plus.len() != minus.len() {
            return Err(Error::MalformedDiagram(format!(
                "{} expanding cells but {} reducing cells",
                plus.len(),
                minus.len()
            )));
        }
        let horizontal: Word = mid.iter().map(|&e| g.edges[e].label).collect();
        Ok(SphericalSplit {
            positive: Diagram::from_parts(
                self.system().clone(),
                self.top().clone(),
                horizontal.clone(),
                plus,
            ),
            negative: Diagram::from_parts(
                self.system().clone(),
                horizontal.clone(),
                self.bottom().clone(),
                minus,
            ),
            horizontal,
        })
    }

    /// Right-to-left enumeration of an expanding diagram as moves on the
    /// running word, rightmost available cell first.
    pub(crate) fn rtl_moves(&self) -> Result<Vec<Move>> {
        let rs = self.system();
        if let Some(i) = self.moves().iter().position(|m| !expanding_move(rs, m)) {
            return Err(Error::NotExpanding(i));
        }
        let g = PlaneGraph::build(self, false);
        let mut out = Vec::with_capacity(g.cells.len());
        let mut stack: Vec<usize> = g.top.clone();
        while let Some(e) = stack.pop() {
            if let Some(c) = g.edges[e].below {
                let cell = &g.cells[c];
                out.push(Move {
                    offset: stack.len(),
                    rule: cell.rule,
                    direction: cell.direction,
                });
                stack.extend_from_slice(&cell.bottom);
            }
        }
        Ok(out)
    }

    /// The cells of an expanding diagram as negative Squier edges
    /// `(uᵢ, rᵢ→ℓᵢ, vᵢ)`, taking the rightmost available cell each time.
    pub fn enumerate_rtl(&self) -> Result<Vec<SquierEdge>> {
        let moves = self.rtl_moves()?;
        let rs = self.system();
        let mut w: Vec<Letter> = self.top().to_vec();
        let mut out = Vec::with_capacity(moves.len());
        for m in moves {
            let r = &rs.rules()[m.rule];
            let to = match m.direction {
                Direction::Forward => &r.rhs,
                Direction::Backward => &r.lhs,
            };
            out.push(SquierEdge {
                left: w[..m.offset].into(),
                rule: m.rule,
                direction: m.direction,
                right: w[m.offset + 1..].into(),
            });
            w.splice(m.offset..m.offset + 1, to.iter().copied());
        }
        Ok(out)
    }
}
