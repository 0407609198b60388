//! Diagrams over a string rewriting system, stored as a top word plus a trace
//! of atomic moves.
//!
//! Two traces describe the same diagram when they differ by commuting
//! independent moves. [`Diagram::reduce`] cancels dipoles and emits the
//! surviving cells in Foata normal form, so reduced diagrams are equal exactly
//! when their top words and move lists are.

mod components;
pub(crate) mod graph;
mod split;
mod text;

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rewriting::{DerivationPath, Direction, Letter, RewritingSystem, SquierEdge, Word};

pub use split::SphericalSplit;
pub use text::{format_diagram, parse_diagram};

pub(crate) use graph::PlaneGraph;

/// One cell application: rewrite at `offset` using `rule` in `direction`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Move {
    pub offset: usize,
    pub rule: usize,
    pub direction: Direction,
}

#[derive(Clone, Debug)]
pub struct Diagram {
    system: Arc<RewritingSystem>,
    top: Word,
    bottom: Word,
    moves: Vec<Move>,
}

impl PartialEq for Diagram {
    /// Literal equality of traces; use [`Diagram::equal`] for equality of
    /// diagrams.
    fn eq(&self, other: &Self) -> bool {
        self.top == other.top && self.moves == other.moves && same_system(self, other)
    }
}

impl Eq for Diagram {}

fn same_system(a: &Diagram, b: &Diagram) -> bool {
    Arc::ptr_eq(&a.system, &b.system) || *a.system == *b.system
}

/// Applies `mv` to `w` in place.
fn replay(rs: &RewritingSystem, w: &mut Vec<Letter>, index: usize, mv: Move) -> Result<()> {
    let rule = rs.rule(mv.rule).map_err(|_| Error::BadMove {
        index,
        reason: format!("unknown rule {}", mv.rule),
    })?;
    let (from, to) = match mv.direction {
        Direction::Forward => (&rule.lhs, &rule.rhs),
        Direction::Backward => (&rule.rhs, &rule.lhs),
    };
    let end = mv.offset + from.len();
    if end > w.len() || w[mv.offset..end] != from[..] {
        return Err(Error::BadMove {
            index,
            reason: format!(
                "{} does not occur at offset {} of {}",
                rs.format_word(from),
                mv.offset,
                rs.format_word(w)
            ),
        });
    }
    w.splice(mv.offset..end, to.iter().copied());
    Ok(())
}

impl Diagram {
    /// Validates `moves` by replaying them from `top`.
    pub fn new(system: Arc<RewritingSystem>, top: Word, moves: Vec<Move>) -> Result<Self> {
        system.check_word(&top)?;
        let mut w = top.to_vec();
        for (i, &mv) in moves.iter().enumerate() {
            replay(&system, &mut w, i, mv)?;
        }
        Ok(Diagram {
            system,
            top,
            bottom: w.into(),
            moves,
        })
    }

    /// `ε(w)`
    pub fn trivial(system: Arc<RewritingSystem>, w: Word) -> Self {
        Diagram {
            system,
            bottom: w.clone(),
            top: w,
            moves: Vec::new(),
        }
    }

    /// `δ(e) = ε(u) + Ψ + ε(v)`
    pub fn atomic(system: Arc<RewritingSystem>, e: &SquierEdge) -> Result<Self> {
        let top = e.source(&system);
        let mv = Move {
            offset: e.left.len(),
            rule: e.rule,
            direction: e.direction,
        };
        Diagram::new(system, top, vec![mv])
    }

    /// `δ(e₁)∘⋯∘δ(eₙ)`
    pub fn from_path(system: Arc<RewritingSystem>, p: &DerivationPath) -> Result<Self> {
        p.check(&system)?;
        let moves = p
            .edges
            .iter()
            .map(|e| Move {
                offset: e.left.len(),
                rule: e.rule,
                direction: e.direction,
            })
            .collect();
        Diagram::new(system, p.source.clone(), moves)
    }

    pub fn system(&self) -> &Arc<RewritingSystem> {
        &self.system
    }

    pub fn top(&self) -> &Word {
        &self.top
    }

    pub fn bottom(&self) -> &Word {
        &self.bottom
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    /// Number of cells `N(Δ)`.
    pub fn cell_count(&self) -> usize {
        self.moves.len()
    }

    pub fn is_spherical(&self) -> bool {
        self.top == self.bottom
    }

    pub fn is_trivial(&self) -> bool {
        self.moves.is_empty()
    }

    /// The trace read as a path in the Squier complex.
    pub fn to_path(&self) -> DerivationPath {
        let mut w = self.top.to_vec();
        let mut edges = Vec::with_capacity(self.moves.len());
        for (i, &mv) in self.moves.iter().enumerate() {
            let len = {
                let r = &self.system.rules()[mv.rule];
                match mv.direction {
                    Direction::Forward => r.lhs.len(),
                    Direction::Backward => r.rhs.len(),
                }
            };
            edges.push(SquierEdge {
                left: w[..mv.offset].into(),
                rule: mv.rule,
                direction: mv.direction,
                right: w[mv.offset + len..].into(),
            });
            replay(&self.system, &mut w, i, mv).expect("validated trace");
        }
        DerivationPath {
            source: self.top.clone(),
            target: self.bottom.clone(),
            edges,
        }
    }

    /// `self ∘ other`, identifying `bot(self)` with `top(other)`.
    pub fn compose(&self, other: &Diagram) -> Result<Diagram> {
        if !same_system(self, other) {
            return Err(Error::SystemMismatch);
        }
        if self.bottom != other.top {
            return Err(Error::BoundaryMismatch {
                bottom: self.system.format_word(&self.bottom),
                top: self.system.format_word(&other.top),
            });
        }
        let mut moves = self.moves.clone();
        moves.extend_from_slice(&other.moves);
        Ok(Diagram {
            system: self.system.clone(),
            top: self.top.clone(),
            bottom: other.bottom.clone(),
            moves,
        })
    }

    /// `self + other`: side by side, all of `self`'s cells scheduled first.
    pub fn sum(&self, other: &Diagram) -> Result<Diagram> {
        if !same_system(self, other) {
            return Err(Error::SystemMismatch);
        }
        let shift = self.bottom.len();
        let mut moves = self.moves.clone();
        moves.extend(other.moves.iter().map(|m| Move {
            offset: m.offset + shift,
            ..*m
        }));
        Ok(Diagram {
            system: self.system.clone(),
            top: self.top.concat(&other.top),
            bottom: self.bottom.concat(&other.bottom),
            moves,
        })
    }

    /// `ε(u) + self + ε(v)`
    pub fn pad(&self, u: &[Letter], v: &[Letter]) -> Diagram {
        Diagram {
            system: self.system.clone(),
            top: Word::wrap(u, &self.top, v),
            bottom: Word::wrap(u, &self.bottom, v),
            moves: self
                .moves
                .iter()
                .map(|m| Move {
                    offset: m.offset + u.len(),
                    ..*m
                })
                .collect(),
        }
    }

    pub fn invert(&self) -> Diagram {
        Diagram {
            system: self.system.clone(),
            top: self.bottom.clone(),
            bottom: self.top.clone(),
            moves: self
                .moves
                .iter()
                .rev()
                .map(|m| Move {
                    direction: m.direction.flip(),
                    ..*m
                })
                .collect(),
        }
    }

    /// The unique reduced diagram equivalent to `self`, in canonical form.
    pub fn reduce(&self) -> Diagram {
        let g = PlaneGraph::build(self, true);
        Diagram {
            system: self.system.clone(),
            top: self.top.clone(),
            bottom: self.bottom.clone(),
            moves: g.canonical_moves(),
        }
    }

    /// True when no dipole occurs.
    pub fn is_reduced(&self) -> bool {
        PlaneGraph::build(self, true).cancelled == 0
    }

    /// Equality of diagrams up to dipoles and commuting independent cells.
    pub fn equal(&self, other: &Diagram) -> bool {
        same_system(self, other) && self.reduce() == other.reduce()
    }

    /// Same diagram with its rule ids mapped through `f` into `system`.
    pub(crate) fn relabel(
        &self,
        system: Arc<RewritingSystem>,
        top: Word,
        f: impl Fn(usize) -> usize,
    ) -> Result<Diagram> {
        let moves = self
            .moves
            .iter()
            .map(|m| Move {
                rule: f(m.rule),
                ..*m
            })
            .collect();
        Diagram::new(system, top, moves)
    }

    /// Same trace with the moves already known to be valid.
    pub(crate) fn from_parts(
        system: Arc<RewritingSystem>,
        top: Word,
        bottom: Word,
        moves: Vec<Move>,
    ) -> Diagram {
        Diagram {
            system,
            top,
            bottom,
            moves,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dunce() -> Arc<RewritingSystem> {
        Arc::new(RewritingSystem::dunce())
    }

    fn x(n: usize) -> Word {
        Word::from_ids(&vec![0; n])
    }

    fn mv(offset: usize, dir: Direction) -> Move {
        Move {
            offset,
            rule: 0,
            direction: dir,
        }
    }

    /// x₀ as a Dunce diagram: expand twice on the left, reduce twice on the right.
    pub(crate) fn x0(d: &Arc<RewritingSystem>) -> Diagram {
        use Direction::*;
        Diagram::new(
            d.clone(),
            x(1),
            vec![
                mv(0, Backward),
                mv(0, Backward),
                mv(1, Forward),
                mv(0, Forward),
            ],
        )
        .unwrap()
    }

    #[test]
    fn trivial_diagrams() {
        let d = dunce();
        let t = Diagram::trivial(d.clone(), x(1));
        assert_eq!(t.cell_count(), 0);
        assert_eq!(t.top(), t.bottom());
        let e = Diagram::trivial(d, Word::empty());
        assert!(e.top().is_empty() && e.is_trivial());
    }

    #[test]
    fn atomic_diagrams() {
        let d = dunce();
        let e = SquierEdge::positive(x(1), 0, Word::empty());
        let a = Diagram::atomic(d.clone(), &e).unwrap();
        assert_eq!((a.top().len(), a.bottom().len(), a.cell_count()), (3, 2, 1));
        let b = Diagram::atomic(
            d,
            &SquierEdge::positive(Word::empty(), 0, Word::empty()).inverse(),
        )
        .unwrap();
        assert_eq!((b.top().clone(), b.bottom().clone()), (x(1), x(2)));
    }

    #[test]
    fn compose_checks_boundaries() {
        let d = dunce();
        let a = Diagram::atomic(
            d.clone(),
            &SquierEdge::positive(Word::empty(), 0, Word::empty()),
        )
        .unwrap();
        let err = a.compose(&a).unwrap_err();
        assert!(matches!(err, Error::BoundaryMismatch { .. }));
        let dipole = a.compose(&a.invert()).unwrap();
        assert_eq!(dipole.cell_count(), 2);
        assert!(dipole.reduce().equal(&Diagram::trivial(d, x(2))));
        assert_eq!(dipole.reduce().cell_count(), 0);
    }

    #[test]
    fn x0_times_inverse_is_trivial() {
        let d = dunce();
        let g = x0(&d);
        assert!(g.is_reduced());
        let p = g.compose(&g.invert()).unwrap().reduce();
        assert_eq!(p, Diagram::trivial(d, x(1)));
    }

    #[test]
    fn different_traces_of_x0_agree() {
        use Direction::*;
        let d = dunce();
        let a = x0(&d);
        // The same cells with an independent dipole inserted before the
        // reductions, and with the first reduction commuted past it.
        let b = Diagram::new(
            d.clone(),
            x(1),
            vec![
                mv(0, Backward),
                mv(0, Backward),
                mv(0, Backward),
                mv(2, Forward),
                mv(0, Forward),
                mv(0, Forward),
            ],
        )
        .unwrap();
        assert!(a.equal(&b));
        let c = Diagram::new(
            d,
            x(1),
            vec![
                mv(0, Backward),
                mv(0, Backward),
                mv(0, Forward),
                mv(0, Forward),
            ],
        )
        .unwrap();
        assert!(!a.equal(&c));
        assert_eq!(c.reduce().cell_count(), 0);
    }

    #[test]
    fn independent_moves_commute() {
        use Direction::*;
        let d = dunce();
        let a = Diagram::new(d.clone(), x(2), vec![mv(0, Backward), mv(2, Backward)]).unwrap();
        let b = Diagram::new(d, x(2), vec![mv(1, Backward), mv(0, Backward)]).unwrap();
        assert!(a.equal(&b));
        assert_ne!(a, b);
    }

    #[test]
    fn sum_shifts_offsets() {
        let d = dunce();
        let g = x0(&d);
        let s = g.sum(&g).unwrap();
        assert_eq!(s.top(), &x(2));
        assert_eq!(s.cell_count(), 8);
        assert!(Diagram::trivial(d.clone(), x(1))
            .sum(&Diagram::trivial(d.clone(), x(2)))
            .unwrap()
            .equal(&Diagram::trivial(d, x(3))));
    }

    #[test]
    fn bad_moves_are_rejected() {
        let d = dunce();
        let err = Diagram::new(d, x(1), vec![mv(0, Direction::Forward)]).unwrap_err();
        assert!(matches!(err, Error::BadMove { index: 0, .. }));
    }
}
