use std::sync::Arc;

use super::element::TreeDiagram;
use super::tree::Tree;
use crate::diagram::{Diagram, Move};
use crate::error::{Error, Result};
use crate::rewriting::{Direction, Letter, RewritingSystem, Word};

/// Expansion moves `x → x^n` growing `tree` in preorder from `offset`.
fn expansion_moves(shape: &[bool], pos: &mut usize, offset: usize, out: &mut Vec<Move>) -> usize {
    let caret = shape[*pos];
    *pos += 1;
    if !caret {
        return 1;
    }
    out.push(Move {
        offset,
        rule: 0,
        direction: Direction::Backward,
    });
    let left = expansion_moves(shape, pos, offset, out);
    let right = expansion_moves(shape, pos, offset + left, out);
    left + right
}

fn tree_moves(t: &Tree) -> Vec<Move> {
    let mut out = Vec::with_capacity(t.carets());
    expansion_moves(t.shape(), &mut 0, 0, &mut out);
    out
}

/// Rebuilds a tree from expanding moves on `x`.
fn tree_from_moves(moves: &[Move]) -> Tree {
    // Arena of nodes; `None` is a leaf, `Some((l, r))` a caret.
    let mut nodes: Vec<Option<(usize, usize)>> = vec![None];
    let mut leaves: Vec<usize> = vec![0];
    for m in moves {
        let node = leaves[m.offset];
        let (l, r) = (nodes.len(), nodes.len() + 1);
        nodes.push(None);
        nodes.push(None);
        nodes[node] = Some((l, r));
        leaves.splice(m.offset..=m.offset, [l, r]);
    }
    let mut shape = Vec::with_capacity(nodes.len());
    let mut stack = vec![0];
    while let Some(n) = stack.pop() {
        match nodes[n] {
            Some((l, r)) => {
                shape.push(true);
                stack.push(r);
                stack.push(l);
            }
            None => shape.push(false),
        }
    }
    Tree::from_shape(shape).expect("arena encodes a full binary tree")
}

fn is_dunce_like(rs: &RewritingSystem) -> bool {
    rs.alphabet_size() == 1
        && rs.rules().len() == 1
        && rs.rules()[0].lhs.letters() == [Letter(0), Letter(0)]
        && rs.rules()[0].rhs.letters() == [Letter(0)]
}

impl TreeDiagram {
    /// The reduced `(x,x)`-diagram over `⟨x | xx → x⟩`: carets of `T₊` become
    /// expanding cells, carets of `T₋` reducing cells.
    pub fn to_diagram(&self) -> Diagram {
        let system = Arc::new(RewritingSystem::dunce());
        let mut moves = tree_moves(self.plus());
        moves.extend(tree_moves(self.minus()).into_iter().rev().map(|m| Move {
            direction: m.direction.flip(),
            ..m
        }));
        Diagram::new(system, Word::from_ids(&[0]), moves)
            .expect("tree moves are valid")
            .reduce()
    }

    /// Reads a spherical `(x,x)`-diagram over a one-letter system with the
    /// single rule `xx → x` as an element of F.
    pub fn from_diagram(d: &Diagram) -> Result<TreeDiagram> {
        let rs = d.system();
        if !is_dunce_like(rs) {
            return Err(Error::MalformedDiagram(
                "expected the system <x | xx -> x>".into(),
            ));
        }
        if d.top().len() != 1 || d.bottom().len() != 1 {
            return Err(Error::MalformedDiagram(format!(
                "expected an (x,x)-diagram, got ({}, {})",
                rs.format_word(d.top()),
                rs.format_word(d.bottom())
            )));
        }
        let split = d.reduce().split_spherical()?;
        let plus = tree_from_moves(split.positive.moves());
        let minus = tree_from_moves(split.negative.invert().moves());
        TreeDiagram::new(plus, minus)
    }

    /// The image of a spherical `(a,a)`-diagram over a tree system under the
    /// map sending every letter to `x`.
    pub fn relabel_into_f(d: &Diagram) -> Result<TreeDiagram> {
        d.system().require_tree()?;
        if d.top().len() != 1 || !d.is_spherical() {
            return Err(Error::MalformedDiagram(
                "expected a spherical diagram on a single letter".into(),
            ));
        }
        let dunce = Arc::new(RewritingSystem::dunce());
        let moves = d.moves().iter().map(|m| Move { rule: 0, ..*m }).collect();
        let image = Diagram::new(dunce, Word::from_ids(&[0]), moves)?;
        TreeDiagram::from_diagram(&image)
    }
}
