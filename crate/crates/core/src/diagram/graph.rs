//! Plane-graph materialisation of a move trace.
//!
//! Edges are created on the top path or as the bottom of a cell; each edge is
//! consumed by at most one cell below it. The current bottom path is kept as a
//! list of edge ids.

use super::{Diagram, Move};
use crate::error::{Error, Result};
use crate::rewriting::{Direction, Letter, RewritingSystem};

#[derive(Clone, Debug)]
pub(crate) struct GEdge {
    pub label: Letter,
    pub src: usize,
    pub dst: usize,
    /// The cell whose bottom path contains this edge.
    pub above: Option<usize>,
    /// The cell whose top path contains this edge.
    pub below: Option<usize>,
}

#[derive(Clone, Debug)]
pub(crate) struct GCell {
    pub rule: usize,
    pub direction: Direction,
    pub top: Vec<usize>,
    pub bottom: Vec<usize>,
    pub alive: bool,
}

#[derive(Clone, Debug)]
pub(crate) struct PlaneGraph {
    pub edges: Vec<GEdge>,
    pub cells: Vec<GCell>,
    pub top: Vec<usize>,
    pub boundary: Vec<usize>,
    pub left: usize,
    pub vertex_count: usize,
    pub cancelled: usize,
}

impl PlaneGraph {
    pub fn new(top: &[Letter]) -> Self {
        let mut g = PlaneGraph {
            edges: Vec::with_capacity(top.len()),
            cells: Vec::new(),
            top: Vec::with_capacity(top.len()),
            boundary: Vec::new(),
            left: 0,
            vertex_count: top.len() + 1,
            cancelled: 0,
        };
        for (i, &l) in top.iter().enumerate() {
            g.edges.push(GEdge {
                label: l,
                src: i,
                dst: i + 1,
                above: None,
                below: None,
            });
            g.top.push(i);
        }
        g.boundary = g.top.clone();
        g
    }

    /// Materialises `d`; with `cancel`, dipoles are removed as they appear,
    /// which leaves the reduced diagram.
    pub fn build(d: &Diagram, cancel: bool) -> Self {
        let mut g = PlaneGraph::new(&d.top);
        for (i, mv) in d.moves.iter().enumerate() {
            g.apply(&d.system, i, *mv, cancel)
                .expect("diagram moves were validated at construction");
        }
        g
    }

    pub fn vertex_at(&self, k: usize) -> usize {
        if k < self.boundary.len() {
            self.edges[self.boundary[k]].src
        } else if let Some(&last) = self.boundary.last() {
            self.edges[last].dst
        } else {
            self.left
        }
    }

    pub fn apply(
        &mut self,
        rs: &RewritingSystem,
        index: usize,
        mv: Move,
        cancel: bool,
    ) -> Result<()> {
        let rule = rs.rule(mv.rule).map_err(|_| Error::BadMove {
            index,
            reason: format!("unknown rule {}", mv.rule),
        })?;
        let (from, to) = match mv.direction {
            Direction::Forward => (&rule.lhs, &rule.rhs),
            Direction::Backward => (&rule.rhs, &rule.lhs),
        };
        let k = mv.offset;
        let m = from.len();
        if k + m > self.boundary.len() {
            return Err(Error::BadMove {
                index,
                reason: format!(
                    "offset {k} plus length {m} exceeds word length {}",
                    self.boundary.len()
                ),
            });
        }
        let matches = self.boundary[k..k + m]
            .iter()
            .zip(from.iter())
            .all(|(&e, &l)| self.edges[e].label == l);
        if !matches {
            return Err(Error::BadMove {
                index,
                reason: format!("{} does not occur at offset {k}", rs.format_word(from)),
            });
        }

        if cancel {
            if let Some(c) = self.edges[self.boundary[k]].above {
                let cell = &self.cells[c];
                if cell.alive
                    && cell.rule == mv.rule
                    && cell.direction == mv.direction.flip()
                    && cell.bottom[..] == self.boundary[k..k + m]
                {
                    let restored = cell.top.clone();
                    self.cells[c].alive = false;
                    for &e in &restored {
                        self.edges[e].below = None;
                    }
                    self.boundary.splice(k..k + m, restored);
                    self.cancelled += 1;
                    return Ok(());
                }
            }
        }

        let c = self.cells.len();
        let start = self.vertex_at(k);
        let end = self.vertex_at(k + m);
        let mut bottom = Vec::with_capacity(to.len());
        let mut prev = start;
        for (j, &l) in to.iter().enumerate() {
            let next = if j + 1 == to.len() {
                end
            } else {
                self.vertex_count += 1;
                self.vertex_count - 1
            };
            self.edges.push(GEdge {
                label: l,
                src: prev,
                dst: next,
                above: Some(c),
                below: None,
            });
            bottom.push(self.edges.len() - 1);
            prev = next;
        }
        let top: Vec<usize> = self.boundary[k..k + m].to_vec();
        for &e in &top {
            self.edges[e].below = Some(c);
        }
        self.boundary.splice(k..k + m, bottom.iter().copied());
        self.cells.push(GCell {
            rule: mv.rule,
            direction: mv.direction,
            top,
            bottom,
            alive: true,
        });
        Ok(())
    }

    pub fn live_cells(&self) -> usize {
        self.cells.iter().filter(|c| c.alive).count()
    }

    /// Emits live cells in Foata levels starting from `start`: each level is
    /// every cell accepted by `keep` whose top path lies on the current
    /// boundary, taken left to right. Stops when a level is empty and returns
    /// the moves together with the boundary reached.
    pub fn emit_levels(
        &self,
        start: Vec<usize>,
        keep: impl Fn(&GCell) -> bool,
    ) -> (Vec<Move>, Vec<usize>) {
        let mut b = start;
        let mut moves = Vec::new();
        loop {
            let mut next = Vec::with_capacity(b.len());
            let mut progressed = false;
            let mut i = 0;
            while i < b.len() {
                let e = b[i];
                if let Some(c) = self.edges[e].below {
                    let cell = &self.cells[c];
                    if cell.alive
                        && keep(cell)
                        && cell.top[0] == e
                        && b.len() - i >= cell.top.len()
                        && b[i..i + cell.top.len()] == cell.top[..]
                    {
                        moves.push(Move {
                            offset: next.len(),
                            rule: cell.rule,
                            direction: cell.direction,
                        });
                        next.extend_from_slice(&cell.bottom);
                        i += cell.top.len();
                        progressed = true;
                        continue;
                    }
                }
                next.push(e);
                i += 1;
            }
            b = next;
            if !progressed {
                return (moves, b);
            }
        }
    }

    pub fn canonical_moves(&self) -> Vec<Move> {
        self.emit_levels(self.top.clone(), |_| true).0
    }
}
