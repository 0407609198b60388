use serde::Serialize;

use super::system::RewritingSystem;
use super::word::{Letter, Word};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Rewrites `ℓ` to `r`.
    Forward,
    /// Rewrites `r` to `ℓ`.
    Backward,
}

impl Direction {
    pub fn flip(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// An edge `(u, ℓ→r, v)` of the Squier complex, traversed in `direction`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SquierEdge {
    pub left: Word,
    pub rule: usize,
    pub direction: Direction,
    pub right: Word,
}

impl SquierEdge {
    pub fn positive(left: Word, rule: usize, right: Word) -> Self {
        SquierEdge {
            left,
            rule,
            direction: Direction::Forward,
            right,
        }
    }

    fn sides<'a>(&self, rs: &'a RewritingSystem) -> (&'a Word, &'a Word) {
        let r = &rs.rules()[self.rule];
        match self.direction {
            Direction::Forward => (&r.lhs, &r.rhs),
            Direction::Backward => (&r.rhs, &r.lhs),
        }
    }

    pub fn source(&self, rs: &RewritingSystem) -> Word {
        Word::wrap(&self.left, self.sides(rs).0, &self.right)
    }

    pub fn target(&self, rs: &RewritingSystem) -> Word {
        Word::wrap(&self.left, self.sides(rs).1, &self.right)
    }

    pub fn inverse(&self) -> Self {
        SquierEdge {
            direction: self.direction.flip(),
            ..self.clone()
        }
    }

    /// `w * e`
    pub fn prefixed(&self, w: &[Letter]) -> Self {
        SquierEdge {
            left: Word::wrap(w, &self.left, &[]),
            ..self.clone()
        }
    }

    /// `e * w`
    pub fn suffixed(&self, w: &[Letter]) -> Self {
        SquierEdge {
            right: self.right.concat(w),
            ..self.clone()
        }
    }

    pub fn format(&self, rs: &RewritingSystem) -> String {
        let arrow = match self.direction {
            Direction::Forward => rs.format_rule(self.rule),
            Direction::Backward => {
                let r = &rs.rules()[self.rule];
                format!("{} -> {}", rs.format_word(&r.rhs), rs.format_word(&r.lhs))
            }
        };
        format!(
            "({}, {}, {})",
            rs.format_word(&self.left),
            arrow,
            rs.format_word(&self.right)
        )
    }
}

/// A path in the Squier complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationPath {
    pub source: Word,
    pub target: Word,
    pub edges: Vec<SquierEdge>,
}

impl DerivationPath {
    pub fn empty(w: Word) -> Self {
        DerivationPath {
            source: w.clone(),
            target: w,
            edges: Vec::new(),
        }
    }

    /// Builds a path from a non-empty edge list, checking that it chains.
    pub fn from_edges(rs: &RewritingSystem, edges: Vec<SquierEdge>) -> Result<Self> {
        let first = edges
            .first()
            .ok_or_else(|| Error::MalformedDiagram("empty edge list".into()))?;
        let source = first.source(rs);
        let mut p = DerivationPath {
            target: source.clone(),
            source,
            edges,
        };
        p.target = p.check(rs)?;
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Verifies chaining and returns the computed target.
    pub fn check(&self, rs: &RewritingSystem) -> Result<Word> {
        let mut cur = self.source.clone();
        for (index, e) in self.edges.iter().enumerate() {
            let r = rs.rule(e.rule)?;
            let src = e.source(rs);
            if src != cur {
                return Err(Error::BrokenChain {
                    index,
                    expected: rs.format_word(&cur),
                    found: rs.format_word(&src),
                });
            }
            debug_assert!(!r.lhs.is_empty());
            cur = e.target(rs);
        }
        if cur != self.target {
            return Err(Error::BrokenChain {
                index: self.edges.len(),
                expected: rs.format_word(&self.target),
                found: rs.format_word(&cur),
            });
        }
        Ok(cur)
    }

    pub fn inverse(&self) -> Self {
        DerivationPath {
            source: self.target.clone(),
            target: self.source.clone(),
            edges: self.edges.iter().rev().map(SquierEdge::inverse).collect(),
        }
    }

    /// Concatenation; the caller guarantees `self.target == other.source`.
    pub fn then(mut self, other: DerivationPath) -> Self {
        debug_assert_eq!(self.target, other.source);
        self.edges.extend(other.edges);
        self.target = other.target;
        self
    }

    /// `w * p`
    pub fn prefixed(&self, w: &[Letter]) -> Self {
        DerivationPath {
            source: Word::wrap(w, &self.source, &[]),
            target: Word::wrap(w, &self.target, &[]),
            edges: self.edges.iter().map(|e| e.prefixed(w)).collect(),
        }
    }

    /// `p * w`
    pub fn suffixed(&self, w: &[Letter]) -> Self {
        DerivationPath {
            source: self.source.concat(w),
            target: self.target.concat(w),
            edges: self.edges.iter().map(|e| e.suffixed(w)).collect(),
        }
    }
}
