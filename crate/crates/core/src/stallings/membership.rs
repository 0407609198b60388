use serde::Serialize;

use super::Core;
use crate::diagram::{Diagram, Move};
use crate::error::Result;
use crate::rewriting::{Direction, Letter, Word};
use crate::thompson::TreeDiagram;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Half {
    /// The expanding half `Δ⁺`.
    Positive,
    /// The inverse `(Δ⁻)⁻¹` of the reducing half.
    Negative,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Rejection {
    /// The `cell`-th cell of `half` in right-to-left order has a top labelled
    /// `label`, and no rule has right-hand side `label`.
    NoRule {
        half: Half,
        cell: usize,
        label: String,
    },
    /// Both halves label, but their bottom paths differ.
    BottomMismatch { positive: String, negative: String },
}

#[derive(Clone, Debug)]
pub enum Verdict {
    /// The element as a reduced `(ρ,ρ)`-diagram over the core system.
    Accepted(Diagram),
    Rejected(Rejection),
}

impl Verdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Verdict::Accepted(_))
    }
}

/// Moves with core rules and the bottom labels of a labelled half.
type Labelled = (Vec<Move>, Vec<Letter>);

impl Core {
    /// Labels an expanding half top-down from `ρ`; on success returns the
    /// moves with core rules and the bottom labels.
    fn label_half(
        &self,
        half: Half,
        d: &Diagram,
    ) -> Result<std::result::Result<Labelled, Rejection>> {
        let rs = &self.system;
        let mut labels = vec![Letter(0)];
        let mut out = Vec::with_capacity(d.cell_count());
        for (i, m) in d.rtl_moves()?.into_iter().enumerate() {
            let top = labels[m.offset];
            let Some(&rule) = rs.rules_with_rhs(&[top]).first() else {
                return Ok(Err(Rejection::NoRule {
                    half,
                    cell: i,
                    label: rs.name(top).to_string(),
                }));
            };
            labels.splice(m.offset..=m.offset, rs.rules()[rule].lhs.iter().copied());
            out.push(Move {
                offset: m.offset,
                rule,
                direction: Direction::Backward,
            });
        }
        Ok(Ok((out, labels)))
    }

    /// Decides whether `g` lies in the closure of the subgroup whose core
    /// this is.
    pub fn membership(&self, g: &TreeDiagram) -> Result<Verdict> {
        self.membership_of_diagram(&g.to_diagram())
    }

    /// [`Core::membership`] for a spherical `(x,x)`-diagram over
    /// `⟨x | xx → x⟩`.
    pub fn membership_of_diagram(&self, d: &Diagram) -> Result<Verdict> {
        let split = d.reduce().split_spherical()?;
        let positive = match self.label_half(Half::Positive, &split.positive)? {
            Ok(p) => p,
            Err(r) => return Ok(Verdict::Rejected(r)),
        };
        let negative = match self.label_half(Half::Negative, &split.negative.invert())? {
            Ok(p) => p,
            Err(r) => return Ok(Verdict::Rejected(r)),
        };
        if positive.1 != negative.1 {
            let rs = &self.system;
            return Ok(Verdict::Rejected(Rejection::BottomMismatch {
                positive: rs.format_word(&positive.1),
                negative: rs.format_word(&negative.1),
            }));
        }
        let mut moves = positive.0;
        moves.extend(negative.0.into_iter().rev().map(|m| Move {
            direction: Direction::Forward,
            ..m
        }));
        let labelled = Diagram::new(self.system.clone(), Word::from_ids(&[0]), moves)?;
        Ok(Verdict::Accepted(labelled))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_x0() {
        let c = Core::build(&[TreeDiagram::x0()]).unwrap();
        let x0 = TreeDiagram::x0();
        assert!(c.membership(&x0.pow(2)).unwrap().is_accepted());
        assert!(c.membership(&x0.pow(-3)).unwrap().is_accepted());
        assert!(c
            .membership(&TreeDiagram::identity())
            .unwrap()
            .is_accepted());
        match c.membership(&TreeDiagram::x1()).unwrap() {
            Verdict::Rejected(Rejection::NoRule { label, .. }) => assert_eq!(label, "c"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn certificate_relabels_back() {
        let c = Core::build(&[TreeDiagram::x0()]).unwrap();
        let g = TreeDiagram::x0().pow(3);
        let Verdict::Accepted(d) = c.membership(&g).unwrap() else {
            panic!("rejected")
        };
        assert!(d.is_reduced());
        assert_eq!(d.cell_count(), g.carets());
        assert_eq!(TreeDiagram::relabel_into_f(&d).unwrap(), g);
    }

    #[test]
    fn core_of_f_accepts_everything() {
        let c = Core::build(&[TreeDiagram::x0(), TreeDiagram::x1()]).unwrap();
        assert!(c.membership(&TreeDiagram::x(4)).unwrap().is_accepted());
        let dunce = Core::from_parts(
            1,
            &[(0, 0)],
            &[super::super::CoreCell {
                top: 0,
                bottom: [0, 0],
            }],
            0,
        )
        .unwrap();
        assert!(dunce.membership(&TreeDiagram::x(3)).unwrap().is_accepted());
    }
}
