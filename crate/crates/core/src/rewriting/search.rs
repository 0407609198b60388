use std::collections::HashMap;

use super::edge::{DerivationPath, Direction, SquierEdge};
use super::system::RewritingSystem;
use super::word::{Letter, Word};

/// Environment variable overriding the default search cap.
pub const CAP_ENV: &str = "THOMPSON_CORE_CAP";

/// `2·max(|w1|,|w2|)+4`, unless overridden through [`CAP_ENV`].
pub fn default_cap(w1: &[Letter], w2: &[Letter]) -> usize {
    if let Some(cap) = std::env::var(CAP_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&c| c > 0)
    {
        return cap.max(w1.len()).max(w2.len());
    }
    2 * w1.len().max(w2.len()) + 4
}

/// A step `w → w'` recorded by position, rule and direction.
#[derive(Clone, Copy)]
struct Step {
    pos: usize,
    rule: usize,
    direction: Direction,
}

impl Step {
    fn apply(self, rs: &RewritingSystem, w: &[Letter]) -> (Word, SquierEdge) {
        let rule = &rs.rules()[self.rule];
        let (from, to) = match self.direction {
            Direction::Forward => (&rule.lhs, &rule.rhs),
            Direction::Backward => (&rule.rhs, &rule.lhs),
        };
        let end = self.pos + from.len();
        let edge = SquierEdge {
            left: w[..self.pos].into(),
            rule: self.rule,
            direction: self.direction,
            right: w[end..].into(),
        };
        (Word::wrap(&w[..self.pos], to, &w[end..]), edge)
    }
}

/// One-step neighbours of `w` within the length cap, in a fixed order:
/// by position, then rule id, forward before backward.
fn neighbours(rs: &RewritingSystem, w: &[Letter], cap: usize) -> Vec<(Word, Step)> {
    let mut out = Vec::new();
    for pos in 0..w.len() {
        for (rule, direction) in rs.moves_at(w, pos) {
            let r = &rs.rules()[rule];
            let (from, to) = match direction {
                Direction::Forward => (r.lhs.len(), r.rhs.len()),
                Direction::Backward => (r.rhs.len(), r.lhs.len()),
            };
            if w.len() - from + to > cap {
                continue;
            }
            let step = Step {
                pos,
                rule,
                direction,
            };
            out.push((step.apply(rs, w).0, step));
        }
    }
    out
}

/// Breadth-first tree: each word is stored once, with the step reaching it.
struct Tree {
    index: HashMap<Word, usize>,
    parent: Vec<Option<(usize, Step)>>,
}

impl Tree {
    fn new(root: Word) -> Self {
        Tree {
            index: HashMap::from([(root, 0)]),
            parent: vec![None],
        }
    }

    fn insert(&mut self, w: Word, from: &Word, step: Step) -> bool {
        if self.index.contains_key(&w) {
            return false;
        }
        let p = self.index[from];
        self.index.insert(w, self.parent.len());
        self.parent.push(Some((p, step)));
        true
    }

    /// Edges from the root to `w`.
    fn trace(&self, rs: &RewritingSystem, root: &Word, w: &Word) -> Vec<SquierEdge> {
        let mut steps = Vec::new();
        let mut cur = self.index[w];
        while let Some((p, step)) = self.parent[cur] {
            steps.push(step);
            cur = p;
        }
        let mut word = root.clone();
        steps
            .into_iter()
            .rev()
            .map(|step| {
                let (next, edge) = step.apply(rs, &word);
                word = next;
                edge
            })
            .collect()
    }
}

/// Bidirectional breadth-first search in the Squier complex over words of
/// length at most `cap`. Returns `None` when the two words are not connected
/// inside that slice.
pub fn find_derivation(
    rs: &RewritingSystem,
    w1: &[Letter],
    w2: &[Letter],
    cap: usize,
) -> Option<DerivationPath> {
    let (w1, w2): (Word, Word) = (w1.into(), w2.into());
    if w1 == w2 {
        return Some(DerivationPath::empty(w1));
    }
    if w1.len() > cap || w2.len() > cap {
        return None;
    }
    let mut fwd = Tree::new(w1.clone());
    let mut bwd = Tree::new(w2.clone());
    let mut fwd_frontier = vec![w1.clone()];
    let mut bwd_frontier = vec![w2.clone()];
    let mut forward_turn = true;

    while !fwd_frontier.is_empty() && !bwd_frontier.is_empty() {
        let (frontier, mine, other) = if forward_turn {
            (&mut fwd_frontier, &mut fwd, &bwd)
        } else {
            (&mut bwd_frontier, &mut bwd, &fwd)
        };
        let mut next_frontier = Vec::new();
        let mut meet = None;
        'layer: for w in frontier.iter() {
            for (n, step) in neighbours(rs, w, cap) {
                if !mine.insert(n.clone(), w, step) {
                    continue;
                }
                if other.index.contains_key(&n) {
                    meet = Some(n);
                    break 'layer;
                }
                next_frontier.push(n);
            }
        }
        if let Some(m) = meet {
            let mut edges = fwd.trace(rs, &w1, &m);
            edges.extend(bwd.trace(rs, &w2, &m).iter().rev().map(SquierEdge::inverse));
            return Some(DerivationPath {
                source: w1,
                target: w2,
                edges,
            });
        }
        *frontier = next_frontier;
        forward_turn = if fwd_frontier.is_empty() || bwd_frontier.is_empty() {
            forward_turn
        } else {
            fwd_frontier.len() <= bwd_frontier.len()
        };
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x0_core() -> RewritingSystem {
        // ρ a b c | ab -> ρ, ac -> a, cb -> b
        RewritingSystem::new(
            ["ρ", "a", "b", "c"].iter().map(|s| s.to_string()).collect(),
            vec![
                (Word::from_ids(&[1, 2]), Word::from_ids(&[0])),
                (Word::from_ids(&[1, 3]), Word::from_ids(&[1])),
                (Word::from_ids(&[3, 2]), Word::from_ids(&[2])),
            ],
            Some(Letter(0)),
        )
        .unwrap()
    }

    #[test]
    fn single_step() {
        let d = RewritingSystem::dunce();
        let p = find_derivation(&d, &Word::from_ids(&[0, 0]), &Word::from_ids(&[0]), 4).unwrap();
        assert_eq!(
            p.edges,
            vec![SquierEdge::positive(Word::empty(), 0, Word::empty())]
        );
    }

    #[test]
    fn identity_is_empty() {
        let d = RewritingSystem::dunce();
        let p = find_derivation(&d, &Word::from_ids(&[0]), &Word::from_ids(&[0]), 4).unwrap();
        assert!(p.is_empty());
    }

    #[test]
    fn core_example_takes_two_steps() {
        let rs = x0_core();
        let acb = Word::from_ids(&[1, 3, 2]);
        let rho = Word::from_ids(&[0]);
        let p = find_derivation(&rs, &acb, &rho, 6).unwrap();
        assert_eq!(p.check(&rs).unwrap(), rho);
        assert_eq!(
            p.edges,
            vec![
                SquierEdge::positive(Word::empty(), 1, Word::from_ids(&[2])),
                SquierEdge::positive(Word::empty(), 0, Word::empty()),
            ]
        );
    }

    #[test]
    fn disconnected_words_are_not_found() {
        let rs = x0_core();
        assert!(find_derivation(&rs, &Word::from_ids(&[1]), &Word::from_ids(&[0]), 6).is_none());
    }

    #[test]
    fn cap_is_respected() {
        let rs = x0_core();
        // The source itself is longer than the cap.
        assert!(
            find_derivation(&rs, &Word::from_ids(&[1, 3, 2]), &Word::from_ids(&[0]), 2).is_none()
        );
    }
}
