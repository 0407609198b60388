//! Shared fixtures for the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use fclosure::diagram::{Diagram, Move};
use fclosure::rewriting::{find_derivation, shortlex, Direction, Letter, RewritingSystem, Word};
use fclosure::thompson::{parse_branch, Branch, BranchPairs, TreeDiagram};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn branch(s: &str) -> Branch {
    parse_branch(s).expect("branch")
}

pub fn table(rows: &[(&str, &str)]) -> TreeDiagram {
    let pairs = rows.iter().map(|(u, v)| (branch(u), branch(v))).collect();
    TreeDiagram::from_branch_pairs(&BranchPairs::new(pairs).expect("prefix codes"))
}

/// The `[u]`-copy of `g`: `g` rescaled onto the dyadic interval `[u]`, the
/// identity elsewhere.
pub fn copy_at(u: &str, g: &TreeDiagram) -> TreeDiagram {
    let u = branch(u);
    let mut pairs = Vec::new();
    for k in 0..u.len() {
        if u[k] {
            let mut s = u[..k].to_vec();
            s.push(false);
            pairs.push((s.clone(), s));
        }
    }
    for (a, b) in g.to_branch_pairs().pairs() {
        let mut ua = u.clone();
        ua.extend(a);
        let mut ub = u.clone();
        ub.extend(b);
        pairs.push((ua, ub));
    }
    for k in (0..u.len()).rev() {
        if !u[k] {
            let mut s = u[..k].to_vec();
            s.push(true);
            pairs.push((s.clone(), s));
        }
    }
    TreeDiagram::from_branch_pairs(&BranchPairs::new(pairs).expect("prefix codes"))
}

/// `x₀` on `[0,1/2]` and on `[1/2,1]`.
pub fn two_bump() -> TreeDiagram {
    table(&[
        ("000", "00"),
        ("001", "010"),
        ("01", "011"),
        ("100", "10"),
        ("101", "110"),
        ("11", "111"),
    ])
}

/// A random word of length at most `max_len` in `x₀`, `x₁` and inverses.
pub fn random_f_word<R: Rng>(rng: &mut R, max_len: usize) -> TreeDiagram {
    let gens = [
        TreeDiagram::x0(),
        TreeDiagram::x1(),
        TreeDiagram::x0().inverse(),
        TreeDiagram::x1().inverse(),
    ];
    let len = rng.gen_range(1..=max_len);
    (0..len).fold(TreeDiagram::identity(), |acc, _| {
        acc.multiply(gens.choose(rng).unwrap())
    })
}

/// A random non-trivial pair of generators given by words of length at most
/// `max_len`.
pub fn random_pair<R: Rng>(rng: &mut R, max_len: usize) -> Vec<TreeDiagram> {
    let mut out = Vec::new();
    while out.len() < 2 {
        let g = random_f_word(rng, max_len);
        if !g.is_identity() {
            out.push(g);
        }
    }
    out
}

/// A random system over `size ≤ 4` letters with ShortLex-decreasing rules of
/// length at most 3.
pub fn random_system<R: Rng>(rng: &mut R) -> Arc<RewritingSystem> {
    let size = rng.gen_range(2..=4u32);
    let names = (0..size)
        .map(|i| ((b'a' + i as u8) as char).to_string())
        .collect();
    let word = |rng: &mut R, len: usize| {
        Word::from_ids(&(0..len).map(|_| rng.gen_range(0..size)).collect::<Vec<_>>())
    };
    let count = rng.gen_range(2..=4);
    let mut rules = Vec::new();
    while rules.len() < count {
        let (l, r) = (rng.gen_range(2..=3), rng.gen_range(1..=2));
        let lhs = word(rng, l);
        let rhs = word(rng, r);
        if shortlex(&rhs, &lhs).is_lt() && !rules.iter().any(|(a, _): &(Word, Word)| *a == lhs) {
            rules.push((lhs, rhs));
        }
    }
    Arc::new(RewritingSystem::new(names, rules, None).expect("valid system"))
}

/// Moves applicable to `w` keeping its length at most `cap`.
pub fn moves_at(rs: &RewritingSystem, w: &[Letter], cap: usize) -> Vec<(Move, Word)> {
    let mut out = Vec::new();
    for rule in rs.rules() {
        for (direction, from, to) in [
            (Direction::Forward, &rule.lhs, &rule.rhs),
            (Direction::Backward, &rule.rhs, &rule.lhs),
        ] {
            if w.len() - from.len().min(w.len()) + to.len() > cap {
                continue;
            }
            for offset in 0..w.len() {
                if w[offset..].starts_with(from) {
                    let next = Word::wrap(&w[..offset], to, &w[offset + from.len()..]);
                    out.push((
                        Move {
                            offset,
                            rule: rule.id,
                            direction,
                        },
                        next,
                    ));
                }
            }
        }
    }
    out
}

/// A random walk of at most `steps` moves from `top`, words at most `cap`.
pub fn random_walk<R: Rng>(
    rng: &mut R,
    rs: &Arc<RewritingSystem>,
    top: Word,
    steps: usize,
    cap: usize,
) -> Diagram {
    let mut w = top.clone();
    let mut moves = Vec::new();
    for _ in 0..steps {
        let options = moves_at(rs, &w, cap);
        let Some((m, next)) = options.choose(rng) else {
            break;
        };
        moves.push(*m);
        w = next.clone();
    }
    Diagram::new(rs.clone(), top, moves).expect("valid walk")
}

/// A random spherical `(w,w)`-diagram: a random walk closed by a shortest
/// path back.
pub fn random_spherical<R: Rng>(
    rng: &mut R,
    rs: &Arc<RewritingSystem>,
    w: &Word,
    steps: usize,
    cap: usize,
) -> Diagram {
    let walk = random_walk(rng, rs, w.clone(), steps, cap);
    let back = find_derivation(rs, walk.bottom(), w, cap).expect("the walk itself leads back");
    walk.compose(&Diagram::from_path(rs.clone(), &back).unwrap())
        .unwrap()
}

/// The lengths `(from, to)` of the words a move replaces.
fn span(rs: &RewritingSystem, m: &Move) -> (usize, usize) {
    let r = &rs.rules()[m.rule];
    match m.direction {
        Direction::Forward => (r.lhs.len(), r.rhs.len()),
        Direction::Backward => (r.rhs.len(), r.lhs.len()),
    }
}

/// Swaps random adjacent pairs of independent moves `swaps` times.
pub fn shuffle_independent<R: Rng>(rng: &mut R, d: &Diagram, swaps: usize) -> Diagram {
    let rs = d.system();
    let mut moves = d.moves().to_vec();
    if moves.len() < 2 {
        return d.clone();
    }
    for _ in 0..swaps {
        let i = rng.gen_range(0..moves.len() - 1);
        let (a, b) = (moves[i], moves[i + 1]);
        let (fa, ta) = span(rs, &a);
        let (fb, tb) = span(rs, &b);
        if b.offset + fb <= a.offset {
            moves[i] = b;
            moves[i + 1] = Move {
                offset: a.offset + tb - fb,
                ..a
            };
        } else if b.offset >= a.offset + ta {
            moves[i] = Move {
                offset: b.offset + fa - ta,
                ..b
            };
            moves[i + 1] = a;
        }
    }
    Diagram::new(rs.clone(), d.top().clone(), moves).expect("independent moves commute")
}

/// Every word of length `len` over `size` letters.
pub fn all_words(size: u32, len: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w: Vec<u32>| {
                (0..size).map(move |l| {
                    let mut w = w.clone();
                    w.push(l);
                    w
                })
            })
            .collect();
    }
    out.iter().map(|w| Word::from_ids(w)).collect()
}
