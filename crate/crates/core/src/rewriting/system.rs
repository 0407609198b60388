use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::edge::Direction;
use super::word::{Letter, Word};
use crate::error::{Error, Result};

/// ShortLex comparison under the letter-id order: shorter words are smaller,
/// equal lengths compare lexicographically.
pub fn shortlex(a: &[Letter], b: &[Letter]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    pub id: usize,
    pub lhs: Word,
    pub rhs: Word,
}

/// A failed tree-system condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TreeViolation {
    LhsLength { rule: usize, len: usize },
    RhsLength { rule: usize, len: usize },
    SharedLhs { first: usize, second: usize },
    SharedRhs { first: usize, second: usize },
}

impl fmt::Display for TreeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeViolation::LhsLength { rule, len } => {
                write!(f, "rule {rule} has a left side of length {len}, expected 2")
            }
            TreeViolation::RhsLength { rule, len } => {
                write!(
                    f,
                    "rule {rule} has a right side of length {len}, expected 1"
                )
            }
            TreeViolation::SharedLhs { first, second } => {
                write!(f, "rules {first} and {second} share their left side")
            }
            TreeViolation::SharedRhs { first, second } => {
                write!(f, "rules {first} and {second} share their right side")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TreeValidation {
    pub violations: Vec<TreeViolation>,
}

impl TreeValidation {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A finite string rewriting system `<Σ | R>` with an ordered alphabet and an
/// optional distinguished letter (which must then be the least letter).
#[derive(Clone, Debug)]
pub struct RewritingSystem {
    names: Vec<String>,
    rules: Vec<Rule>,
    distinguished: Option<Letter>,
    by_lhs: HashMap<Vec<Letter>, Vec<usize>>,
    by_rhs: HashMap<Vec<Letter>, Vec<usize>>,
    max_lhs: usize,
    lhs_lens: Vec<usize>,
    rhs_lens: Vec<usize>,
}

impl PartialEq for RewritingSystem {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
            && self.rules == other.rules
            && self.distinguished == other.distinguished
    }
}

impl Eq for RewritingSystem {}

impl RewritingSystem {
    /// Rules are given as `(lhs, rhs)` pairs; rule ids are their positions.
    pub fn new(
        names: Vec<String>,
        rules: Vec<(Word, Word)>,
        distinguished: Option<Letter>,
    ) -> Result<Self> {
        let size = names.len();
        let check = |w: &Word| -> Result<()> {
            for l in w.iter() {
                if l.index() >= size {
                    return Err(Error::ForeignLetter { letter: l.0, size });
                }
            }
            Ok(())
        };
        let mut out = Vec::with_capacity(rules.len());
        for (id, (lhs, rhs)) in rules.into_iter().enumerate() {
            check(&lhs)?;
            check(&rhs)?;
            if lhs.is_empty() || rhs.is_empty() {
                return Err(Error::EmptyRuleSide { rule: id });
            }
            out.push(Rule { id, lhs, rhs });
        }
        if let Some(d) = distinguished {
            if d.index() >= size {
                return Err(Error::ForeignLetter { letter: d.0, size });
            }
            if d.0 != 0 {
                return Err(Error::DistinguishedNotLeast(names[d.index()].clone()));
            }
        }
        let mut by_lhs: HashMap<Vec<Letter>, Vec<usize>> = HashMap::new();
        let mut by_rhs: HashMap<Vec<Letter>, Vec<usize>> = HashMap::new();
        let mut max_lhs = 0;
        for r in &out {
            by_lhs.entry(r.lhs.to_vec()).or_default().push(r.id);
            by_rhs.entry(r.rhs.to_vec()).or_default().push(r.id);
            max_lhs = max_lhs.max(r.lhs.len());
        }
        let lens = |f: fn(&Rule) -> usize| {
            let mut v: Vec<usize> = out.iter().map(f).collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        let lhs_lens = lens(|r| r.lhs.len());
        let rhs_lens = lens(|r| r.rhs.len());
        Ok(RewritingSystem {
            names,
            rules: out,
            distinguished,
            by_lhs,
            by_rhs,
            max_lhs,
            lhs_lens,
            rhs_lens,
        })
    }

    /// `<x | xx -> x>`, whose diagram group at `x` is Thompson's group F.
    pub fn dunce() -> Self {
        RewritingSystem::new(
            vec!["x".to_string()],
            vec![(Word::from_ids(&[0, 0]), Word::from_ids(&[0]))],
            Some(Letter(0)),
        )
        .expect("the Dunce system is well formed")
    }

    pub fn alphabet_size(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, l: Letter) -> &str {
        &self.names[l.index()]
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| Letter(i as u32))
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rule(&self, id: usize) -> Result<&Rule> {
        self.rules.get(id).ok_or(Error::UnknownRule(id))
    }

    pub fn distinguished(&self) -> Option<Letter> {
        self.distinguished
    }

    pub fn max_lhs_len(&self) -> usize {
        self.max_lhs
    }

    pub fn rules_with_lhs(&self, lhs: &[Letter]) -> &[usize] {
        self.by_lhs.get(lhs).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn rules_with_rhs(&self, rhs: &[Letter]) -> &[usize] {
        self.by_rhs.get(rhs).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Rules applicable at `w[pos..]`, ordered by rule id with forward
    /// before backward.
    pub(crate) fn moves_at(&self, w: &[Letter], pos: usize) -> Vec<(usize, Direction)> {
        let room = w.len() - pos;
        let mut out = Vec::new();
        for (lens, index, dir) in [
            (&self.lhs_lens, &self.by_lhs, Direction::Forward),
            (&self.rhs_lens, &self.by_rhs, Direction::Backward),
        ] {
            for &k in lens.iter().take_while(|&&k| k <= room) {
                if let Some(ids) = index.get(&w[pos..pos + k]) {
                    out.extend(ids.iter().map(|&id| (id, dir)));
                }
            }
        }
        out.sort_by_key(|&(id, dir)| (id, dir == Direction::Backward));
        out
    }

    pub fn check_word(&self, w: &[Letter]) -> Result<()> {
        match w.iter().find(|l| l.index() >= self.names.len()) {
            Some(l) => Err(Error::ForeignLetter {
                letter: l.0,
                size: self.names.len(),
            }),
            None => Ok(()),
        }
    }

    pub fn shortlex_cmp(&self, a: &[Letter], b: &[Letter]) -> Result<Ordering> {
        self.check_word(a)?;
        self.check_word(b)?;
        Ok(shortlex(a, b))
    }

    /// True iff no left-hand side occurs as a factor of `w`.
    pub fn is_reduced(&self, w: &[Letter]) -> bool {
        (1..=w.len()).all(|end| self.lhs_ending_at(w, end).next().is_none())
    }

    /// Lengths `k` such that `w[end-k..end]` is a left-hand side.
    pub(crate) fn lhs_ending_at<'a>(
        &'a self,
        w: &'a [Letter],
        end: usize,
    ) -> impl Iterator<Item = usize> + 'a {
        (1..=self.max_lhs.min(end)).filter(move |&k| self.by_lhs.contains_key(&w[end - k..end]))
    }

    /// Lengths `k` such that `w[start..start+k]` is a left-hand side.
    pub(crate) fn lhs_starting_at<'a>(
        &'a self,
        w: &'a [Letter],
        start: usize,
    ) -> impl Iterator<Item = usize> + 'a {
        let room = w.len() - start;
        (1..=self.max_lhs.min(room))
            .filter(move |&k| self.by_lhs.contains_key(&w[start..start + k]))
    }

    /// The first rule whose right side is not ShortLex-smaller than its left side.
    pub fn first_non_decreasing_rule(&self) -> Option<usize> {
        self.rules
            .iter()
            .find(|r| shortlex(&r.rhs, &r.lhs) != Ordering::Less)
            .map(|r| r.id)
    }

    pub fn validate_tree_system(&self) -> TreeValidation {
        let mut violations = Vec::new();
        for r in &self.rules {
            if r.lhs.len() != 2 {
                violations.push(TreeViolation::LhsLength {
                    rule: r.id,
                    len: r.lhs.len(),
                });
            }
            if r.rhs.len() != 1 {
                violations.push(TreeViolation::RhsLength {
                    rule: r.id,
                    len: r.rhs.len(),
                });
            }
        }
        let mut seen_lhs: HashMap<&[Letter], usize> = HashMap::new();
        let mut seen_rhs: HashMap<&[Letter], usize> = HashMap::new();
        for r in &self.rules {
            if let Some(&first) = seen_lhs.get(&r.lhs[..]) {
                violations.push(TreeViolation::SharedLhs {
                    first,
                    second: r.id,
                });
            } else {
                seen_lhs.insert(&r.lhs, r.id);
            }
            if let Some(&first) = seen_rhs.get(&r.rhs[..]) {
                violations.push(TreeViolation::SharedRhs {
                    first,
                    second: r.id,
                });
            } else {
                seen_rhs.insert(&r.rhs, r.id);
            }
        }
        TreeValidation { violations }
    }

    pub fn is_tree_system(&self) -> bool {
        self.validate_tree_system().is_ok()
    }

    pub(crate) fn require_tree(&self) -> Result<()> {
        let report = self.validate_tree_system();
        match report.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::NotTreeSystem(v.to_string())),
        }
    }

    /// Space-separated letter names; the empty word prints as `ε`.
    pub fn format_word(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "ε".to_string();
        }
        w.iter()
            .map(|l| {
                self.names
                    .get(l.index())
                    .cloned()
                    .unwrap_or_else(|| l.to_string())
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Inverse of [`format_word`](Self::format_word). Letters are separated by
    /// whitespace; `ε` (or nothing) denotes the empty word.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() || s == "ε" {
            return Ok(Word::empty());
        }
        s.split_whitespace().map(|tok| self.letter(tok)).collect()
    }

    pub fn format_rule(&self, id: usize) -> String {
        let r = &self.rules[id];
        format!(
            "{} -> {}",
            self.format_word(&r.lhs),
            self.format_word(&r.rhs)
        )
    }
}
