//! Encoding a finite group presentation as a tree rewriting system, and the
//! conjugacy instances built from it.
//!
//! The pipeline balances the presentation, replaces relators by positive
//! relations `v = aᵢ`, and splits each relation into a chain of two-letter
//! rules through fresh letters.

mod conjugacy;
mod free;

use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{parse_err, Error, Result};
use crate::rewriting::{strip_comment, Letter, RewritingSystem, Word};

pub use conjugacy::{
    conjugacy_instance, derive_to_suffix, final_letters, find_conjugator, find_seed, instance,
    ConjugacyInstance, DEFAULT_WINDOW, SEARCH_LIMIT,
};
pub use free::{as_positive, free_equal, free_inverse, free_reduce, positive, FreeLetter};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<FreeLetter>>,
}

impl GroupPresentation {
    /// `gens: a b` followed by `rel: a b A B` lines; an upper-case name is
    /// the inverse of the lower-case generator.
    pub fn parse(text: &str) -> Result<GroupPresentation> {
        let mut generators: Option<Vec<String>> = None;
        let mut relators = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("gens:") {
                let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                for n in &names {
                    if n.to_lowercase() != *n || n.to_uppercase() == *n {
                        return Err(parse_err(
                            line_no,
                            format!("generator `{n}` must be lower case"),
                        ));
                    }
                }
                generators = Some(names);
            } else if let Some(rest) = line.strip_prefix("rel:") {
                let gens = generators
                    .as_ref()
                    .ok_or_else(|| parse_err(line_no, "`rel:` before `gens:`"))?;
                let mut w = Vec::new();
                for tok in rest.split_whitespace() {
                    let lower = tok.to_lowercase();
                    let g = gens
                        .iter()
                        .position(|n| *n == lower)
                        .ok_or_else(|| parse_err(line_no, format!("unknown generator `{tok}`")))?;
                    w.push(if tok == lower {
                        FreeLetter::pos(g)
                    } else {
                        FreeLetter::neg(g)
                    });
                }
                relators.push(w);
            } else {
                return Err(parse_err(line_no, format!("cannot parse `{line}`")));
            }
        }
        let generators = generators.ok_or_else(|| parse_err(1, "missing `gens:` line"))?;
        Ok(GroupPresentation {
            generators,
            relators,
        })
    }

    pub fn format_word(&self, w: &[FreeLetter]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter()
            .map(|l| {
                let n = &self.generators[l.generator];
                if l.inverse {
                    n.to_uppercase()
                } else {
                    n.clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn format(&self) -> String {
        let mut out = format!("gens: {}\n", self.generators.join(" "));
        for r in &self.relators {
            let _ = writeln!(out, "rel: {}", self.format_word(r));
        }
        out
    }
}

/// `a₀a₁²a₂⋯aₙ` as generator indices.
fn e_word(n: usize) -> Vec<usize> {
    let mut e = vec![0, 1];
    e.extend(1..=n);
    e
}

/// Adds generators up to `n = #relators` and `a₀` with `a₀a₁²a₂⋯aₙ = 1`.
/// Generators of the result are `a0, …, an`; input generator `i` becomes
/// `a{i+1}`.
pub fn balance(gp: &GroupPresentation) -> Result<GroupPresentation> {
    let m = gp.generators.len();
    let n = gp.relators.len();
    if n < m {
        return Err(Error::Presentation(format!(
            "balancing needs at least as many relators as generators ({n} < {m})"
        )));
    }
    if m == 0 {
        return Err(Error::Presentation("no generators".into()));
    }
    let generators = (0..=n).map(|i| format!("a{i}")).collect();
    let mut relators = vec![positive(&e_word(n))];
    for r in &gp.relators {
        relators.push(
            r.iter()
                .map(|l| FreeLetter {
                    generator: l.generator + 1,
                    inverse: l.inverse,
                })
                .collect(),
        );
    }
    Ok(GroupPresentation {
        generators,
        relators,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PositivePresentation {
    pub generators: Vec<String>,
    /// `E = a₀a₁²a₂⋯aₙ`.
    pub e: Vec<usize>,
    /// The positive words `u′ⱼ`, one per relator after the first.
    pub positivized: Vec<Vec<usize>>,
    /// Relations `v = aᵢ` as `(v, i)`.
    pub relations: Vec<(Vec<usize>, usize)>,
}

impl PositivePresentation {
    pub fn n(&self) -> usize {
        self.generators.len() - 1
    }

    fn rotation(&self, start: usize) -> Vec<usize> {
        let k = start % self.e.len();
        let mut r = self.e[k..].to_vec();
        r.extend_from_slice(&self.e[..k]);
        r
    }

    fn first_index(&self, i: usize) -> usize {
        self.e
            .iter()
            .position(|&g| g == i)
            .expect("every generator occurs in E")
    }

    /// `E_t = a₁a₂⋯aₙa₀a₁`.
    pub fn e_t(&self) -> Vec<usize> {
        self.rotation(2)
    }

    /// The cyclic shift of `E` starting at the first occurrence of `aᵢ`.
    pub fn e_left(&self, i: usize) -> Vec<usize> {
        self.rotation(self.first_index(i))
    }

    /// The cyclic shift of `E` ending at the first occurrence of `aᵢ`.
    pub fn e_right(&self, i: usize) -> Vec<usize> {
        self.rotation(self.first_index(i) + 1)
    }

    /// A positive word equal to `w` in the group, replacing each `aᵢ⁻¹` by
    /// `E_i^{(r)}aᵢ⁻¹` and cancelling.
    pub fn positive_form(&self, w: &[FreeLetter]) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for &l in w {
            if l.generator > self.n() {
                return Err(Error::Presentation(format!(
                    "generator index {} out of range",
                    l.generator
                )));
            }
            if l.inverse {
                out.extend(positive(&self.e_right(l.generator)));
            }
            out.push(l);
        }
        as_positive(&free_reduce(&out))
            .ok_or_else(|| Error::Presentation("cancellation left a negative letter".into()))
    }
}

/// Replaces every relator of a balanced presentation by a positive relation.
pub fn positivize(gp: &GroupPresentation) -> Result<PositivePresentation> {
    let n = gp
        .generators
        .len()
        .checked_sub(1)
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Presentation("expected generators a0, …, an with n ≥ 1".into()))?;
    if gp.relators.len() != n + 1 || gp.relators[0] != positive(&e_word(n)) {
        return Err(Error::Presentation(
            "expected a balanced presentation: n + 1 relators, the first a0 a1 a1 a2 … an".into(),
        ));
    }
    let mut pp = PositivePresentation {
        generators: gp.generators.clone(),
        e: e_word(n),
        positivized: Vec::new(),
        relations: Vec::new(),
    };
    for r in &gp.relators[1..] {
        let u = pp.positive_form(r)?;
        pp.positivized.push(u);
    }
    let mut lhs = pp.e_t();
    lhs.push(0);
    pp.relations.push((lhs, 0));
    for j in 1..=n {
        let next = j % n + 1;
        let mut lhs = pp.e_left(next);
        lhs.extend_from_slice(&pp.positivized[j - 1]);
        lhs.push(j);
        lhs.extend(pp.e_right(next));
        pp.relations.push((lhs, j));
    }
    Ok(pp)
}

/// The tree system of a positive presentation, with the word each fresh
/// letter stands for.
#[derive(Clone, Debug)]
pub struct TreeEncoding {
    pub presentation: PositivePresentation,
    pub system: Arc<RewritingSystem>,
    /// For letter `a₀..aₙ` the letter itself; for `tⱼ(v)` the suffix
    /// `b_{j+1}⋯b_k` of its relation.
    pub expansions: Vec<Vec<usize>>,
}

impl TreeEncoding {
    /// `aᵢ` as a letter of the tree system.
    pub fn generator(&self, i: usize) -> Letter {
        Letter(i as u32)
    }

    /// Word over the generators as a word of the tree system.
    pub fn word(&self, w: &[usize]) -> Word {
        Word::from_ids(&w.iter().map(|&g| g as u32).collect::<Vec<_>>())
    }

    /// Replaces every fresh letter by its expansion.
    pub fn expand(&self, w: &[Letter]) -> Vec<usize> {
        w.iter()
            .flat_map(|l| self.expansions[l.index()].iter().copied())
            .collect()
    }
}

/// Splits each relation `b₁⋯b_k = aᵢ` into `b₁t₁ → aᵢ, b₂t₂ → t₁, …,
/// b_{k−1}b_k → t_{k−2}`.
pub fn tree_encode(pp: &PositivePresentation) -> Result<TreeEncoding> {
    let mut names = pp.generators.clone();
    let mut expansions: Vec<Vec<usize>> = (0..names.len()).map(|i| vec![i]).collect();
    let mut rules = Vec::new();
    let id = |i: usize| Letter(i as u32);
    for (r, (v, target)) in pp.relations.iter().enumerate() {
        let k = v.len();
        if k < 2 {
            return Err(Error::Presentation(format!(
                "relation {r} has a left side of length {k}"
            )));
        }
        let first_t = names.len();
        for j in 1..=k - 2 {
            names.push(format!("t{r}_{j}"));
            expansions.push(v[j..].to_vec());
        }
        let t = |j: usize| id(first_t + j - 1);
        let mut upper = id(*target);
        for j in 1..=k - 2 {
            rules.push((
                Word::from(&[id(v[j - 1]), t(j)][..]),
                Word::from(&[upper][..]),
            ));
            upper = t(j);
        }
        rules.push((
            Word::from(&[id(v[k - 2]), id(v[k - 1])][..]),
            Word::from(&[upper][..]),
        ));
    }
    let system = RewritingSystem::new(names, rules, Some(Letter(0)))?;
    let validation = system.validate_tree_system();
    if !validation.is_ok() {
        return Err(Error::NotTreeSystem(format!("{:?}", validation.violations)));
    }
    Ok(TreeEncoding {
        presentation: pp.clone(),
        system: Arc::new(system),
        expansions,
    })
}

/// `balance`, `positivize` and `tree_encode` in sequence.
pub fn encode(gp: &GroupPresentation) -> Result<TreeEncoding> {
    tree_encode(&positivize(&balance(gp)?)?)
}
