use std::fmt;

use serde::Serialize;

use super::Closure;
use crate::diagram::{Diagram, Move};
use crate::error::{Error, Result};
use crate::rewriting::{derivation_to_normal_form, Direction, Side, SquierEdge};
use crate::stallings::Verdict;
use crate::thompson::TreeDiagram;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FactorLetter {
    pub index: usize,
    pub exponent: i8,
}

impl FactorLetter {
    fn inverse(self) -> Self {
        FactorLetter {
            index: self.index,
            exponent: -self.exponent,
        }
    }
}

/// A word in the generators `X` (equivalently `Y`), freely reduced.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FactorWord {
    pub letters: Vec<FactorLetter>,
}

impl FactorWord {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn push(&mut self, l: FactorLetter) {
        if self.letters.last() == Some(&l.inverse()) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn inverse(&self) -> FactorWord {
        FactorWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }
}

impl fmt::Display for FactorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| {
                if l.exponent > 0 {
                    format!("y{}", l.index)
                } else {
                    format!("y{}^-1", l.index)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Factorization {
    pub word: FactorWord,
    /// `N` of the reduced input.
    pub cells: usize,
    pub bound_holds: bool,
}

impl Closure {
    /// Letters for `[q]`, `q` the right derivation of `v` over `P′`.
    fn right_word(&self, v: &[crate::rewriting::Letter]) -> Vec<FactorLetter> {
        let q = derivation_to_normal_form(self.combined(), v, Side::Right);
        q.edges
            .iter()
            .filter_map(|e| self.x_letter(e.rule))
            .map(|index| FactorLetter { index, exponent: 1 })
            .collect()
    }

    /// `[e] = [q]·x·[q]⁻¹` for an edge `(u, ℓ→r, v)`.
    fn edge_letters(&self, e: &SquierEdge, out: &mut FactorWord) {
        let Some(index) = self.x_letter(e.rule) else {
            return;
        };
        let q = self.right_word(&e.right);
        let exponent = match e.direction {
            Direction::Forward => 1,
            Direction::Backward => -1,
        };
        for &l in &q {
            out.push(l);
        }
        out.push(FactorLetter { index, exponent });
        for &l in q.iter().rev() {
            out.push(l.inverse());
        }
    }

    /// The `(ρ,ρ)`-path through a reduced diagram over `P`: the expanding
    /// half cell by cell from the right, then the reducing half likewise.
    fn rtl_path_moves(&self, d: &Diagram) -> Result<Vec<Move>> {
        let split = d.split_spherical()?;
        let mut moves = split.positive.rtl_moves()?;
        let negative = split.negative.invert().rtl_moves()?;
        moves.extend(negative.into_iter().rev().map(|m| Move {
            direction: m.direction.flip(),
            ..m
        }));
        Ok(moves)
    }

    /// Writes a `(ρ,ρ)`-diagram over `P` or `P′` as a word in `X`, and checks
    /// that the product of the `X` loops and of the `Y` diagrams both
    /// reproduce it.
    pub fn factorize(&self, d: &Diagram) -> Result<Factorization> {
        let rho = crate::rewriting::Word::from_ids(&[0]);
        if d.top() != &rho || d.bottom() != &rho {
            return Err(Error::NotSpherical {
                top: d.system().format_word(d.top()),
                bottom: d.system().format_word(d.bottom()),
            });
        }
        let reduced = d.reduce();
        let over_base = **d.system() == **self.base();
        let moves = if over_base {
            self.rtl_path_moves(&self.to_base(&reduced)?)?
        } else {
            reduced.moves().to_vec()
        };
        let path = Diagram::new(self.combined().clone(), rho, moves)?.to_path();
        let mut word = FactorWord::default();
        for e in &path.edges {
            self.edge_letters(e, &mut word);
        }

        let target = self.to_combined(&reduced)?;
        if !self.x_product(&word)?.equal(&target) {
            return Err(Error::Factorization(format!(
                "product of X loops differs from the input for `{word}`"
            )));
        }
        let image = self.theta(&reduced)?;
        if !self.y_product(&word)?.equal(&image) {
            return Err(Error::Factorization(format!(
                "product of Y diagrams differs from θ(input) for `{word}`"
            )));
        }
        let cells = reduced.cell_count();
        Ok(Factorization {
            bound_holds: word.len() <= 3 * cells,
            word,
            cells,
        })
    }

    /// Factorizes an element of F, which must lie in the closure.
    pub fn factorize_element(&self, g: &TreeDiagram) -> Result<Factorization> {
        match self.semi_completion().core().membership(g)? {
            Verdict::Accepted(d) => self.factorize(&d),
            Verdict::Rejected(_) => Err(Error::Factorization(format!(
                "element with {} carets is not in the closure",
                g.carets()
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completion::SemiCompletion;
    use crate::stallings::Core;

    fn closure_of(gens: &[TreeDiagram]) -> Closure {
        let c = Core::build(gens).unwrap();
        Closure::new(&SemiCompletion::new(&c).unwrap(), None).unwrap()
    }

    #[test]
    fn trivial_factors_to_empty() {
        let cl = closure_of(&[TreeDiagram::x0()]);
        let f = cl.factorize_element(&TreeDiagram::identity()).unwrap();
        assert!(f.word.is_empty());
        assert_eq!(f.cells, 0);
    }

    #[test]
    fn x0_factors_within_bound() {
        let cl = closure_of(&[TreeDiagram::x0()]);
        let f = cl.factorize_element(&TreeDiagram::x0()).unwrap();
        assert!(f.word.len() <= 12 && f.bound_holds, "{f:?}");
        assert_eq!(f.word.len(), 1);
        let g = cl.y_product(&f.word).unwrap();
        assert_eq!(TreeDiagram::relabel_into_f(&g).unwrap(), TreeDiagram::x0());
    }

    #[test]
    fn loops_factor_as_themselves() {
        let cl = closure_of(&[TreeDiagram::x0(), TreeDiagram::x1()]);
        for g in cl.generators_x() {
            let f = cl.factorize(&g.loop_diagram).unwrap();
            let back = cl.x_product(&f.word).unwrap();
            assert_eq!(back, g.loop_diagram);
        }
    }

    #[test]
    fn standard_generators_factor_over_y() {
        let cl = closure_of(&[TreeDiagram::x0(), TreeDiagram::x1()]);
        for g in [
            TreeDiagram::x0(),
            TreeDiagram::x1(),
            TreeDiagram::x(3).inverse(),
        ] {
            let f = cl.factorize_element(&g).unwrap();
            assert!(f.bound_holds, "{f:?}");
            let back = TreeDiagram::relabel_into_f(&cl.y_product(&f.word).unwrap()).unwrap();
            assert_eq!(back, g);
        }
        assert!(cl
            .factorize_element(&TreeDiagram::identity())
            .unwrap()
            .word
            .is_empty());
    }
}
