use std::cmp::Ordering;

use super::edge::{DerivationPath, Side, SquierEdge};
use super::system::{shortlex, RewritingSystem};
use super::word::{Letter, Word};

/// Among rules with left side `lhs`, the one with the ShortLex-least right side
/// (ties broken by rule id).
fn least_rule(rs: &RewritingSystem, lhs: &[Letter]) -> usize {
    *rs.rules_with_lhs(lhs)
        .iter()
        .min_by(|&&a, &&b| shortlex(&rs.rules()[a].rhs, &rs.rules()[b].rhs).then(a.cmp(&b)))
        .expect("caller found an occurrence of this left side")
}

/// Position and rule of the principal left edge, scanning prefixes that end at
/// or after `from_end`. Every prefix ending before `from_end` must be reduced.
fn left_site(rs: &RewritingSystem, w: &[Letter], from_end: usize) -> Option<(usize, usize)> {
    for end in from_end.max(1)..=w.len() {
        if let Some(k) = rs.lhs_ending_at(w, end).max() {
            return Some((end - k, least_rule(rs, &w[end - k..end])));
        }
    }
    None
}

/// Mirror of [`left_site`]: scans suffixes starting at or before `from_start`.
fn right_site(rs: &RewritingSystem, w: &[Letter], from_start: usize) -> Option<(usize, usize)> {
    let top = from_start.min(w.len());
    for start in (0..top).rev() {
        if let Some(k) = rs.lhs_starting_at(w, start).max() {
            return Some((start, least_rule(rs, &w[start..start + k])));
        }
    }
    None
}

fn edge_at(rs: &RewritingSystem, w: &[Letter], pos: usize, rule: usize) -> SquierEdge {
    let len = rs.rules()[rule].lhs.len();
    SquierEdge::positive(w[..pos].into(), rule, w[pos + len..].into())
}

/// The unique outgoing principal edge of `w` on the given side, or `None` iff
/// `w` is reduced.
pub fn principal_edge(rs: &RewritingSystem, w: &[Letter], side: Side) -> Option<SquierEdge> {
    let site = match side {
        Side::Left => left_site(rs, w, 1),
        Side::Right => right_site(rs, w, w.len()),
    };
    site.map(|(pos, rule)| edge_at(rs, w, pos, rule))
}

/// The longest left (or right) derivation from `w`; its target is the normal
/// form `w̄^ℓ` (or `w̄^r`).
pub fn derivation_to_normal_form(rs: &RewritingSystem, w: &[Letter], side: Side) -> DerivationPath {
    let mut cur: Vec<Letter> = w.to_vec();
    let mut edges = Vec::new();
    // Prefixes (left) or suffixes (right) already known to be reduced.
    let mut hint = match side {
        Side::Left => 1,
        Side::Right => cur.len(),
    };
    loop {
        let site = match side {
            Side::Left => left_site(rs, &cur, hint),
            Side::Right => right_site(rs, &cur, hint),
        };
        let Some((pos, rule)) = site else { break };
        let edge = edge_at(rs, &cur, pos, rule);
        let r = &rs.rules()[rule];
        let mut next = Vec::with_capacity(cur.len() + r.rhs.len());
        next.extend_from_slice(&cur[..pos]);
        next.extend_from_slice(&r.rhs);
        next.extend_from_slice(&cur[pos + r.lhs.len()..]);
        debug_assert_eq!(shortlex(&next, &cur), Ordering::Less);
        hint = match side {
            Side::Left => pos + 1,
            Side::Right => pos + r.rhs.len(),
        };
        cur = next;
        edges.push(edge);
    }
    DerivationPath {
        source: w.into(),
        target: cur.into(),
        edges,
    }
}

pub fn normal_form(rs: &RewritingSystem, w: &[Letter], side: Side) -> Word {
    derivation_to_normal_form(rs, w, side).target
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewriting::Direction;

    fn x(n: usize) -> Word {
        Word::from_ids(&vec![0; n])
    }

    #[test]
    fn dunce_principal_edges() {
        let d = RewritingSystem::dunce();
        let e = principal_edge(&d, &x(3), Side::Left).unwrap();
        assert_eq!(e, SquierEdge::positive(Word::empty(), 0, x(1)));
        let e = principal_edge(&d, &x(3), Side::Right).unwrap();
        assert_eq!(e, SquierEdge::positive(x(1), 0, Word::empty()));
        assert!(principal_edge(&d, &x(1), Side::Left).is_none());
    }

    #[test]
    fn dunce_derivations() {
        let d = RewritingSystem::dunce();
        for side in [Side::Left, Side::Right] {
            let p = derivation_to_normal_form(&d, &x(4), side);
            assert_eq!(p.len(), 3);
            assert_eq!(p.target, x(1));
            assert_eq!(p.check(&d).unwrap(), x(1));
            assert!(p.edges.iter().all(|e| e.direction == Direction::Forward));
        }
        let p = derivation_to_normal_form(&d, &x(1), Side::Left);
        assert!(p.is_empty());
        assert_eq!(p.source, p.target);
    }

    #[test]
    fn longest_suffix_and_least_rhs_are_chosen() {
        // alphabet a<b<c ; rules: bc -> a, abc -> b, abc -> a
        let rs = RewritingSystem::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                (Word::from_ids(&[1, 2]), Word::from_ids(&[0])),
                (Word::from_ids(&[0, 1, 2]), Word::from_ids(&[1])),
                (Word::from_ids(&[0, 1, 2]), Word::from_ids(&[0])),
            ],
            None,
        )
        .unwrap();
        let e = principal_edge(&rs, &Word::from_ids(&[0, 1, 2, 2]), Side::Left).unwrap();
        assert_eq!(
            e,
            SquierEdge::positive(Word::empty(), 2, Word::from_ids(&[2]))
        );
    }
}
