use std::collections::HashMap;

use super::TreeEncoding;
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::rewriting::{find_derivation, DerivationPath, Direction, Letter, SquierEdge, Word};

/// `Δ(u) = Ψ ∘ (ε(p′) + Δ + ε(u)) ∘ Ψ⁻¹` with `Ψ` an `(a₀, p′a₀u)`-diagram.
#[derive(Clone, Debug)]
pub struct ConjugacyInstance {
    pub word: Word,
    pub prefix: Word,
    pub psi: Diagram,
    pub diagram: Diagram,
}

/// Searches the Squier graph around `a₀` (words of length at most `cap`,
/// at most `limit` of them) for a loop whose diagram is not trivial.
pub fn find_seed(enc: &TreeEncoding, cap: usize, limit: usize) -> Option<Diagram> {
    let rs = &enc.system;
    let root = Word::from_ids(&[0]);
    let mut parent: HashMap<Word, Option<(Word, SquierEdge)>> =
        HashMap::from([(root.clone(), None)]);
    let mut frontier = vec![root.clone()];
    let path_to = |parent: &HashMap<Word, Option<(Word, SquierEdge)>>, w: &Word| {
        let mut edges = Vec::new();
        let mut cur = w.clone();
        while let Some(Some((prev, e))) = parent.get(&cur) {
            edges.push(e.clone());
            cur = prev.clone();
        }
        edges.reverse();
        DerivationPath {
            source: root.clone(),
            target: w.clone(),
            edges,
        }
    };
    while !frontier.is_empty() && parent.len() < limit {
        let mut next = Vec::new();
        for w in &frontier {
            for (target, e) in neighbours(enc, w, cap) {
                match parent.get(&target) {
                    None => {
                        parent.insert(target.clone(), Some((w.clone(), e)));
                        next.push(target);
                    }
                    Some(Some((p, back))) if p == w && back == &e => {}
                    Some(other) => {
                        if parent
                            .get(w)
                            .and_then(|x| x.as_ref())
                            .is_some_and(|(p, b)| p == &target && b.inverse() == e)
                        {
                            continue;
                        }
                        if commuting_square(&parent, w, &e, other.as_ref()) {
                            continue;
                        }
                        let mut path = path_to(&parent, w);
                        path.edges.push(e);
                        path.target = target.clone();
                        let path = path.then(path_to(&parent, &target).inverse());
                        let d = Diagram::from_path(rs.clone(), &path).ok()?.reduce();
                        if !d.is_trivial() {
                            return Some(d);
                        }
                    }
                }
            }
        }
        frontier = next;
    }
    None
}

/// True when the loop through `w → target` along `e` is the boundary of a
/// square of two disjoint moves, so its diagram is trivial.
fn commuting_square(
    parent: &HashMap<Word, Option<(Word, SquierEdge)>>,
    w: &Word,
    e: &SquierEdge,
    other: Option<&(Word, SquierEdge)>,
) -> bool {
    let (Some(Some((g1, a))), Some((p, b))) = (parent.get(w), other) else {
        return false;
    };
    let Some(Some((g2, c))) = parent.get(p) else {
        return false;
    };
    if g1 != g2
        || (a.rule, a.direction) != (b.rule, b.direction)
        || (e.rule, e.direction) != (c.rule, c.direction)
    {
        return false;
    }
    let (a_end, e_end) = (w.len() - a.right.len(), w.len() - e.right.len());
    if a_end <= e.left.len() {
        b.left.len() == a.left.len() && c.right.len() == e.right.len()
    } else if e_end <= a.left.len() {
        b.right.len() == a.right.len() && c.left.len() == e.left.len()
    } else {
        false
    }
}

/// Widest window tried by [`instance`] when searching for `Ψ`.
pub const DEFAULT_WINDOW: usize = 10;

/// A move found by the window search: the parent node, the position in the
/// parent window, and how many letters the move pushed out of the window.
#[derive(Clone, Copy)]
struct WindowStep {
    parent: usize,
    pos: usize,
    rule: usize,
    direction: Direction,
    frozen: usize,
}

/// Searches for a derivation from `a₀` to a word ending in `suffix`. Only the
/// last `window` letters are ever rewritten; letters pushed out on the left
/// stay fixed, so at most `limit` windows are explored.
pub fn derive_to_suffix(
    enc: &TreeEncoding,
    suffix: &[Letter],
    window: usize,
    limit: usize,
) -> Option<DerivationPath> {
    let rs = &enc.system;
    let root = Word::from_ids(&[0]);
    let window = window.max(suffix.len());
    let mut nodes: Vec<Option<WindowStep>> = vec![None];
    let mut seen: HashMap<Word, usize> = HashMap::from([(root.clone(), 0)]);
    let mut frontier = vec![(root.clone(), 0)];
    let mut hit = root.ends_with(suffix).then_some(0);
    while hit.is_none() && !frontier.is_empty() && nodes.len() < limit {
        let mut next = Vec::new();
        'layer: for (w, id) in &frontier {
            for (target, e) in neighbours(enc, w, usize::MAX) {
                let frozen = target.len().saturating_sub(window);
                let kept: Word = target[frozen..].into();
                if seen.contains_key(&kept) {
                    continue;
                }
                let node = nodes.len();
                nodes.push(Some(WindowStep {
                    parent: *id,
                    pos: e.left.len(),
                    rule: e.rule,
                    direction: e.direction,
                    frozen,
                }));
                seen.insert(kept.clone(), node);
                if kept.ends_with(suffix) {
                    hit = Some(node);
                    break 'layer;
                }
                next.push((kept, node));
            }
        }
        frontier = next;
    }
    let mut steps = Vec::new();
    let mut cur = hit?;
    while let Some(step) = nodes[cur] {
        cur = step.parent;
        steps.push(step);
    }
    let mut word = root.clone();
    let mut offset = 0;
    let mut edges = Vec::new();
    for WindowStep {
        pos,
        rule,
        direction,
        frozen,
        ..
    } in steps.into_iter().rev()
    {
        let at = offset + pos;
        let r = &rs.rules()[rule];
        let from = match direction {
            Direction::Forward => r.lhs.len(),
            Direction::Backward => r.rhs.len(),
        };
        let e = SquierEdge {
            left: word[..at].into(),
            rule,
            direction,
            right: word[at + from..].into(),
        };
        word = e.target(rs);
        edges.push(e);
        offset += frozen;
    }
    Some(DerivationPath {
        source: root,
        target: word,
        edges,
    })
}

/// Letters that can end a word equivalent to `a₀`. A rewrite touching the last
/// letter swaps the last letter of a left side with its right side, so these
/// are the class of `a₀` under that relation.
pub fn final_letters(enc: &TreeEncoding) -> Vec<Letter> {
    let rs = &enc.system;
    let mut class: Vec<usize> = (0..rs.alphabet_size()).collect();
    fn root(class: &mut [usize], mut x: usize) -> usize {
        while class[x] != x {
            class[x] = class[class[x]];
            x = class[x];
        }
        x
    }
    for r in rs.rules() {
        let (a, b) = (
            root(&mut class, r.lhs[r.lhs.len() - 1].index()),
            root(&mut class, r.rhs[r.rhs.len() - 1].index()),
        );
        class[a] = b;
    }
    let a0 = root(&mut class, 0);
    (0..rs.alphabet_size())
        .filter(|&x| root(&mut class, x) == a0)
        .map(|x| Letter(x as u32))
        .collect()
}

fn neighbours(enc: &TreeEncoding, w: &[Letter], cap: usize) -> Vec<(Word, SquierEdge)> {
    let rs = &enc.system;
    let mut out = Vec::new();
    for pos in 0..w.len() {
        if w.len() < cap {
            for &rule in rs.rules_with_rhs(&w[pos..pos + 1]) {
                let e = SquierEdge {
                    left: w[..pos].into(),
                    rule,
                    direction: Direction::Backward,
                    right: w[pos + 1..].into(),
                };
                out.push((e.target(rs), e));
            }
        }
        if pos + 1 < w.len() {
            for &rule in rs.rules_with_lhs(&w[pos..pos + 2]) {
                let e = SquierEdge::positive(w[..pos].into(), rule, w[pos + 2..].into());
                out.push((e.target(rs), e));
            }
        }
    }
    out
}

/// Most windows explored per width by [`instance`].
pub const SEARCH_LIMIT: usize = 300_000;

fn check_seed(enc: &TreeEncoding, seed: &Diagram) -> Result<()> {
    let a0 = Word::from_ids(&[0]);
    if **seed.system() != *enc.system || seed.top() != &a0 || seed.bottom() != &a0 {
        return Err(Error::MalformedDiagram(
            "the seed must be an (a0,a0)-diagram over the encoding".into(),
        ));
    }
    if seed.reduce().is_trivial() {
        return Err(Error::MalformedDiagram(
            "the seed must be non-trivial".into(),
        ));
    }
    Ok(())
}

fn assemble(seed: &Diagram, word: Word, prefix: Word, psi: Diagram) -> Result<ConjugacyInstance> {
    let middle = seed.pad(&prefix, &word);
    let diagram = psi.compose(&middle)?.compose(&psi.invert())?.reduce();
    Ok(ConjugacyInstance {
        word,
        prefix,
        psi,
        diagram,
    })
}

/// Builds `Δ(u)` for a positive word `u` over the generators, with `Ψ` from
/// window searches of increasing width for a word `p′a₀u` equivalent to `a₀`.
pub fn instance(enc: &TreeEncoding, u: &[usize], seed: &Diagram) -> Result<ConjugacyInstance> {
    check_seed(enc, seed)?;
    let rs = &enc.system;
    let word = enc.word(u);
    let ends = final_letters(enc);
    if let Some(last) = word.last() {
        if !ends.contains(last) {
            return Err(Error::NoLeftQuotient {
                word: rs.format_word(&word),
                ends: ends
                    .iter()
                    .map(|l| rs.names()[l.index()].clone())
                    .collect::<Vec<_>>()
                    .join(", "),
            });
        }
    }
    let suffix = Word::wrap(&[], &[Letter(0)], &word);
    let path = (suffix.len() + 1..=DEFAULT_WINDOW.max(suffix.len() + 1))
        .find_map(|window| derive_to_suffix(enc, &suffix, window, SEARCH_LIMIT))
        .ok_or_else(|| Error::CapExhausted {
            from: rs.format_word(&[Letter(0)]),
            to: format!("… {}", rs.format_word(&suffix)),
            cap: DEFAULT_WINDOW,
        })?;
    let prefix: Word = path.target[..path.target.len() - suffix.len()].into();
    let psi = Diagram::from_path(rs.clone(), &path)?;
    assemble(seed, word, prefix, psi)
}

/// `(Δ(u), Δ(v))`, each built with its own `Ψ`.
pub fn conjugacy_instance(
    enc: &TreeEncoding,
    u: &[usize],
    v: &[usize],
    seed: &Diagram,
) -> Result<(ConjugacyInstance, ConjugacyInstance)> {
    Ok((instance(enc, u, seed)?, instance(enc, v, seed)?))
}

/// Strips a common prefix and suffix, keeping both middles non-empty.
fn trim<'a>(a: &'a [Letter], b: &'a [Letter]) -> (usize, &'a [Letter], &'a [Letter], usize) {
    let max = a.len().min(b.len()).saturating_sub(1);
    let pre = a
        .iter()
        .zip(b)
        .take(max)
        .take_while(|(x, y)| x == y)
        .count();
    let max_suf = max - pre;
    let suf = a[pre..]
        .iter()
        .rev()
        .zip(b[pre..].iter().rev())
        .take(max_suf)
        .take_while(|(x, y)| x == y)
        .count();
    (pre, &a[pre..a.len() - suf], &b[pre..b.len() - suf], suf)
}

fn bridge(enc: &TreeEncoding, a: &[Letter], b: &[Letter], cap: usize) -> Option<Diagram> {
    let rs = &enc.system;
    if a == b {
        return Some(Diagram::trivial(rs.clone(), a.into()));
    }
    let (pre, x, y, suf) = trim(a, b);
    let path = (x.len().max(y.len())..=cap).find_map(|c| find_derivation(rs, x, y, c))?;
    let d = Diagram::from_path(rs.clone(), &path).ok()?;
    Some(d.pad(&a[..pre], &a[a.len() - suf..]))
}

/// Looks for `η` with `η⁻¹ ∘ Δ(u) ∘ η = Δ(v)` of the form
/// `Ψ ∘ (ξ + ε(a₀) + ζ) ∘ Φ⁻¹`, where `ξ` and `ζ` are derivations from `p′`
/// to `q′` and from `u` to `v` found within `cap`.
pub fn find_conjugator(
    enc: &TreeEncoding,
    du: &ConjugacyInstance,
    dv: &ConjugacyInstance,
    cap: usize,
) -> Result<Option<Diagram>> {
    let rs = &enc.system;
    let Some(xi) = bridge(enc, &du.prefix, &dv.prefix, cap) else {
        return Ok(None);
    };
    let Some(zeta) = bridge(enc, &du.word, &dv.word, cap) else {
        return Ok(None);
    };
    let a0 = Diagram::trivial(rs.clone(), Word::from_ids(&[0]));
    let middle = xi.sum(&a0)?.sum(&zeta)?;
    let eta = du.psi.compose(&middle)?.compose(&dv.psi.invert())?.reduce();
    let conj = eta.invert().compose(&du.diagram)?.compose(&eta)?;
    Ok(conj.equal(&dv.diagram).then_some(eta))
}
