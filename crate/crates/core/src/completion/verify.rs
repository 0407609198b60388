use std::cmp::Ordering;

use serde::Serialize;

use super::SemiCompletion;
use crate::error::Result;
use crate::rewriting::{derivation_to_normal_form, principal_edge, shortlex, Letter, Side, Word};

/// Upper bound on the number of paths examined per direction.
pub const DEFAULT_PATH_LIMIT: usize = 200_000;

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub skipped: bool,
    pub checked: usize,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub length_cap: usize,
    pub degenerate: bool,
    /// Set when a path enumeration hit the path limit before the length cap.
    pub truncated: bool,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Longest `ι_ν` plus three.
pub fn default_length_cap(sc: &SemiCompletion) -> usize {
    sc.tables()
        .iota_of
        .iter()
        .map(|w| w.len())
        .max()
        .unwrap_or(0)
        + 3
}

struct Tally {
    name: &'static str,
    checked: usize,
    counterexample: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            checked: 0,
            counterexample: None,
        }
    }

    fn record(&mut self, ok: bool, why: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(why());
        }
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            name: self.name.to_string(),
            passed: self.counterexample.is_none(),
            skipped: false,
            checked: self.checked,
            counterexample: self.counterexample,
        }
    }
}

fn skipped(name: &str) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        passed: true,
        skipped: true,
        checked: 0,
        counterexample: None,
    }
}

/// Directed paths of length `1..=cap` leaving `start` (or entering it when
/// `backward`), at most `limit` of them. The flag reports truncation.
fn paths(
    sc: &SemiCompletion,
    start: usize,
    cap: usize,
    backward: bool,
    limit: usize,
) -> (Vec<Word>, bool) {
    let edges = sc.core().edges();
    let mut out = Vec::new();
    let mut frontier: Vec<(Vec<Letter>, usize)> = vec![(Vec::new(), start)];
    for _ in 0..cap {
        let mut next = Vec::new();
        for (w, v) in &frontier {
            for (e, &(s, d)) in edges.iter().enumerate() {
                let (from, to) = if backward { (d, s) } else { (s, d) };
                if from != *v {
                    continue;
                }
                if out.len() >= limit {
                    return (out, true);
                }
                let mut w2 = Vec::with_capacity(w.len() + 1);
                if backward {
                    w2.push(Letter(e as u32));
                    w2.extend_from_slice(w);
                } else {
                    w2.extend_from_slice(w);
                    w2.push(Letter(e as u32));
                }
                out.push(Word::from(w2.as_slice()));
                next.push((w2, to));
            }
        }
        frontier = next;
    }
    (out, false)
}

/// Checks the defining properties of the semi-completion on every path of
/// length at most `length_cap` (default [`default_length_cap`]).
pub fn verify_semicompletion(
    sc: &SemiCompletion,
    length_cap: Option<usize>,
    path_limit: usize,
) -> Result<VerificationReport> {
    let rs = sc.combined();
    let tables = sc.tables();
    let cap = length_cap.unwrap_or_else(|| default_length_cap(sc));
    let fmt = |w: &[Letter]| rs.format_word(w);
    let mut checks = Vec::new();

    let mut decreasing = Tally::new("rules_decreasing");
    for (i, r) in rs.rules().iter().enumerate() {
        decreasing.record(shortlex(&r.rhs, &r.lhs) == Ordering::Less, || {
            rs.format_rule(i)
        });
    }
    checks.push(decreasing.finish());

    if sc.is_degenerate() {
        for name in ["tables_reduced", "left_divisors", "right_divisors", "euler"] {
            checks.push(skipped(name));
        }
        return Ok(VerificationReport {
            length_cap: cap,
            degenerate: true,
            truncated: false,
            checks,
        });
    }

    let mut tables_reduced = Tally::new("tables_reduced");
    for (v, w) in tables.iota_of.iter().enumerate() {
        tables_reduced.record(rs.is_reduced(w), || format!("ι_{v} = {}", fmt(w)));
    }
    for (v, w) in tables.tau_of.iter().enumerate() {
        tables_reduced.record(rs.is_reduced(w), || format!("τ_{v} = {}", fmt(w)));
    }
    checks.push(tables_reduced.finish());

    let core = sc.core();
    let (left_paths, t1) = paths(sc, core.iota(), cap, false, path_limit);
    let mut left = Tally::new("left_divisors");
    for w in &left_paths {
        let target = &tables.iota_of[sc.end(w)];
        let reduced = rs.is_reduced(w);
        left.record(reduced == (w == target), || {
            format!("{}: reduced = {reduced}, ι-word {}", fmt(w), fmt(target))
        });
        let d = derivation_to_normal_form(rs, w, Side::Left);
        left.record(&d.target == target, || {
            format!(
                "{}: left normal form {} ≠ {}",
                fmt(w),
                fmt(&d.target),
                fmt(target)
            )
        });
        left.record(d.edges.iter().all(|e| sc.origin(e.rule).iota), || {
            format!("{}: left derivation leaves R_ι", fmt(w))
        });
        if reduced {
            continue;
        }
        let k = (1..=w.len())
            .rev()
            .find(|&k| rs.is_reduced(&w[..k]))
            .unwrap_or(0);
        let e = w[k];
        let rest: Word = w[k + 1..].into();
        let expected_lhs = tables.iota_of[core.edges()[e.index()].0].concat(&[e]);
        let p = principal_edge(rs, w, Side::Left).expect("non-reduced word has a principal edge");
        let r = &rs.rules()[p.rule];
        left.record(
            p.left.is_empty() && r.lhs == expected_lhs && p.right == rest && sc.origin(p.rule).iota,
            || format!("{}: principal left edge {}", fmt(w), p.format(rs)),
        );
        left.record(d.len() <= w.len() - k, || {
            format!(
                "{}: left derivation of length {} > {}",
                fmt(w),
                d.len(),
                w.len() - k
            )
        });
    }
    checks.push(left.finish());

    let (right_paths, t2) = paths(sc, core.tau(), cap, true, path_limit);
    let mut right = Tally::new("right_divisors");
    for w in &right_paths {
        let target = &tables.tau_of[sc.start(w)];
        let reduced = rs.is_reduced(w);
        right.record(reduced == (w == target), || {
            format!("{}: reduced = {reduced}, τ-word {}", fmt(w), fmt(target))
        });
        let d = derivation_to_normal_form(rs, w, Side::Right);
        right.record(&d.target == target, || {
            format!(
                "{}: right normal form {} ≠ {}",
                fmt(w),
                fmt(&d.target),
                fmt(target)
            )
        });
        right.record(d.edges.iter().all(|e| sc.origin(e.rule).tau), || {
            format!("{}: right derivation leaves R_τ", fmt(w))
        });
        if reduced {
            continue;
        }
        // `w = u″ e v` with `v` the longest reduced suffix.
        let k = (0..w.len())
            .find(|&k| rs.is_reduced(&w[k..]))
            .unwrap_or(w.len());
        let e = w[k - 1];
        let head: Word = w[..k - 1].into();
        let expected_lhs = Word::wrap(&[e], &tables.tau_of[core.edges()[e.index()].1], &[]);
        let p = principal_edge(rs, w, Side::Right).expect("non-reduced word has a principal edge");
        let r = &rs.rules()[p.rule];
        right.record(
            p.right.is_empty() && r.lhs == expected_lhs && p.left == head && sc.origin(p.rule).tau,
            || format!("{}: principal right edge {}", fmt(w), p.format(rs)),
        );
        right.record(d.len() <= k, || {
            format!("{}: right derivation of length {} > {k}", fmt(w), d.len())
        });
    }
    checks.push(right.finish());

    let stats = core.stats();
    let mut euler = Tally::new("euler");
    let expect = stats.m - stats.n;
    euler.record(
        sc.r_iota().len() == expect && sc.r_tau().len() == expect,
        || {
            format!(
                "|R_ι| = {}, |R_τ| = {}, m - n = {expect}",
                sc.r_iota().len(),
                sc.r_tau().len()
            )
        },
    );
    checks.push(euler.finish());

    Ok(VerificationReport {
        length_cap: cap,
        degenerate: false,
        truncated: t1 || t2,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stallings::{Core, CoreCell};
    use crate::thompson::TreeDiagram;

    #[test]
    fn x0_passes_at_six() {
        let c = Core::build(&[TreeDiagram::x0()]).unwrap();
        let sc = SemiCompletion::new(&c).unwrap();
        let report = verify_semicompletion(&sc, Some(6), DEFAULT_PATH_LIMIT).unwrap();
        assert!(report.passed(), "{report:?}");
        assert!(!report.truncated);
        assert!(report.check("left_divisors").unwrap().checked > 0);
        assert_eq!(sc.r_iota().len(), 2);
    }

    #[test]
    fn dunce_is_flagged() {
        let c = Core::from_parts(
            1,
            &[(0, 0)],
            &[CoreCell {
                top: 0,
                bottom: [0, 0],
            }],
            0,
        )
        .unwrap();
        let sc = SemiCompletion::new(&c).unwrap();
        assert!(sc.is_degenerate());
        let report = verify_semicompletion(&sc, None, DEFAULT_PATH_LIMIT).unwrap();
        assert!(report.degenerate && report.passed());
        assert!(report.check("euler").unwrap().skipped);
        assert!(sc.require_generic().is_err());
    }

    #[test]
    fn core_of_f_passes() {
        let c = Core::build(&[TreeDiagram::x0(), TreeDiagram::x1()]).unwrap();
        let sc = SemiCompletion::new(&c).unwrap();
        let report = verify_semicompletion(&sc, None, DEFAULT_PATH_LIMIT).unwrap();
        assert!(report.passed(), "{report:?}");
    }
}
