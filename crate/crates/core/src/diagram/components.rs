use super::graph::PlaneGraph;
use super::{Diagram, Move};
use crate::error::{Error, Result};

impl Diagram {
    /// The unique decomposition `Δ = η₁ + ⋯ + η_m` of a spherical diagram into
    /// trivial and sum-indecomposable summands, no two trivial ones adjacent.
    pub fn sum_components(&self) -> Result<Vec<Diagram>> {
        if !self.is_spherical() {
            let rs = self.system();
            return Err(Error::NotSpherical {
                top: rs.format_word(self.top()),
                bottom: rs.format_word(self.bottom()),
            });
        }
        let n = self.top().len();
        if n == 0 {
            return Ok(vec![self.clone()]);
        }
        let full = PlaneGraph::build(self, false);
        let top_vertices: Vec<usize> = (0..=n).collect();
        let bottom_vertices: Vec<usize> = (0..=n).map(|k| full.vertex_at(k)).collect();
        // Positions where the top and bottom paths meet.
        let cuts: Vec<usize> = (0..=n)
            .filter(|&k| top_vertices[k] == bottom_vertices[k])
            .collect();
        let mut is_cut = vec![false; full.vertex_count];
        for &k in &cuts {
            is_cut[k] = true;
        }

        // Replay, attributing each move to the piece between two cuts.
        let pieces = cuts.len() - 1;
        let mut piece_moves: Vec<Vec<Move>> = vec![Vec::new(); pieces];
        let mut g = PlaneGraph::new(self.top());
        for (i, mv) in self.moves().iter().enumerate() {
            let mut piece = 0;
            let mut cut_pos = 0;
            for k in 1..=mv.offset {
                if is_cut[g.vertex_at(k)] {
                    piece += 1;
                    cut_pos = k;
                }
            }
            piece_moves[piece].push(Move {
                offset: mv.offset - cut_pos,
                ..*mv
            });
            g.apply(self.system(), i, *mv, false)?;
        }

        let mut out: Vec<Diagram> = Vec::new();
        let mut pending_trivial: Option<(usize, usize)> = None;
        for (j, moves) in piece_moves.into_iter().enumerate() {
            let (a, b) = (cuts[j], cuts[j + 1]);
            if moves.is_empty() {
                pending_trivial = Some(match pending_trivial {
                    Some((s, _)) => (s, b),
                    None => (a, b),
                });
                continue;
            }
            if let Some((s, e)) = pending_trivial.take() {
                out.push(Diagram::trivial(
                    self.system().clone(),
                    self.top().slice(s, e),
                ));
            }
            out.push(Diagram::new(
                self.system().clone(),
                self.top().slice(a, b),
                moves,
            )?);
        }
        if let Some((s, e)) = pending_trivial {
            out.push(Diagram::trivial(
                self.system().clone(),
                self.top().slice(s, e),
            ));
        }
        Ok(out)
    }
}
