//! Semi-completion of a core rewriting system.
//!
//! `P′ = ⟨E | R ∪ R_ι ∪ R_τ⟩` adds, for every edge `e`, the rule
//! `ι_{e−}e → ι_{e+}` and the rule `eτ_{e+} → τ_{e−}` whenever the two sides
//! differ. Rules of `P′` keep the core's rule ids for `R` and append the new
//! ones after, each tagged with the sets it came from.

mod verify;

use std::cmp::Ordering;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rewriting::{shortlex, Letter, RewritingSystem, Word};
use crate::stallings::Core;

pub use verify::{
    default_length_cap, verify_semicompletion, CheckResult, VerificationReport, DEFAULT_PATH_LIMIT,
};

/// `ι_ν` and `τ_ν` for every vertex `ν`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalPathTables {
    pub iota_of: Vec<Word>,
    pub tau_of: Vec<Word>,
}

impl MinimalPathTables {
    /// ShortLex-least directed paths `ι → ν` and `ν → τ` in the core.
    pub fn compute(core: &Core) -> Result<MinimalPathTables> {
        let n = core.vertex_count();
        let edges = core.edges();
        let letter = |e: usize| Letter(e as u32);

        // Layer by layer; within a layer the least extension of a least
        // word wins.
        let mut iota_of: Vec<Option<Word>> = vec![None; n];
        iota_of[core.iota()] = Some(Word::empty());
        let mut layer = vec![core.iota()];
        while !layer.is_empty() {
            let mut next: Vec<usize> = Vec::new();
            for &u in &layer {
                let base = iota_of[u].clone().expect("layer vertices are labelled");
                for (e, &(s, d)) in edges.iter().enumerate() {
                    if s != u {
                        continue;
                    }
                    let cand = base.concat(&[letter(e)]);
                    match &iota_of[d] {
                        None => {
                            iota_of[d] = Some(cand);
                            next.push(d);
                        }
                        Some(cur)
                            if next.contains(&d) && shortlex(&cand, cur) == Ordering::Less =>
                        {
                            iota_of[d] = Some(cand);
                        }
                        _ => {}
                    }
                }
            }
            layer = next;
        }

        let mut tau_of: Vec<Option<Word>> = vec![None; n];
        tau_of[core.tau()] = Some(Word::empty());
        let mut layer = vec![core.tau()];
        while !layer.is_empty() {
            let mut next: Vec<usize> = Vec::new();
            for &w in &layer {
                let base = tau_of[w].clone().expect("layer vertices are labelled");
                for (e, &(s, d)) in edges.iter().enumerate() {
                    if d != w {
                        continue;
                    }
                    let cand = Word::wrap(&[letter(e)], &base, &[]);
                    match &tau_of[s] {
                        None => {
                            tau_of[s] = Some(cand);
                            next.push(s);
                        }
                        Some(cur)
                            if next.contains(&s) && shortlex(&cand, cur) == Ordering::Less =>
                        {
                            tau_of[s] = Some(cand);
                        }
                        _ => {}
                    }
                }
            }
            layer = next;
        }

        let unwrap = |t: Vec<Option<Word>>| -> Result<Vec<Word>> {
            t.into_iter()
                .enumerate()
                .map(|(v, w)| w.ok_or(Error::Unreachable(v)))
                .collect()
        };
        Ok(MinimalPathTables {
            iota_of: unwrap(iota_of)?,
            tau_of: unwrap(tau_of)?,
        })
    }
}

/// Which of `R`, `R_ι`, `R_τ` a rule of `P′` belongs to.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RuleOrigin {
    pub core: bool,
    pub iota: bool,
    pub tau: bool,
}

pub fn minimal_paths(core: &Core) -> Result<MinimalPathTables> {
    MinimalPathTables::compute(core)
}

pub fn semi_complete(core: &Core) -> Result<SemiCompletion> {
    SemiCompletion::new(core)
}

#[derive(Clone, Debug)]
pub struct SemiCompletion {
    core: Core,
    tables: MinimalPathTables,
    r_iota: Vec<(Word, Word)>,
    r_tau: Vec<(Word, Word)>,
    combined: Arc<RewritingSystem>,
    origins: Vec<RuleOrigin>,
    degenerate: bool,
}

impl SemiCompletion {
    /// Builds `P′` for the core's canonical letter order. A core with `ι = τ`
    /// gets no extra rules and is flagged degenerate.
    pub fn new(core: &Core) -> Result<SemiCompletion> {
        let base = core.system();
        let degenerate = core.is_degenerate();
        let tables = if degenerate {
            MinimalPathTables {
                iota_of: vec![Word::empty(); core.vertex_count()],
                tau_of: vec![Word::empty(); core.vertex_count()],
            }
        } else {
            MinimalPathTables::compute(core)?
        };
        let mut r_iota = Vec::new();
        let mut r_tau = Vec::new();
        if !degenerate {
            for (e, &(s, d)) in core.edges().iter().enumerate() {
                let l = Letter(e as u32);
                let lhs = tables.iota_of[s].concat(&[l]);
                if lhs != tables.iota_of[d] {
                    r_iota.push((lhs, tables.iota_of[d].clone()));
                }
                let lhs = Word::wrap(&[l], &tables.tau_of[d], &[]);
                if lhs != tables.tau_of[s] {
                    r_tau.push((lhs, tables.tau_of[s].clone()));
                }
            }
        }
        let mut rules: Vec<(Word, Word)> = Vec::new();
        let mut origins: Vec<RuleOrigin> = Vec::new();
        let mut add = |rule: &(Word, Word), tag: fn(&mut RuleOrigin)| {
            let i = match rules.iter().position(|r| r == rule) {
                Some(i) => i,
                None => {
                    rules.push(rule.clone());
                    origins.push(RuleOrigin::default());
                    rules.len() - 1
                }
            };
            tag(&mut origins[i]);
        };
        for r in base.rules() {
            add(&(r.lhs.clone(), r.rhs.clone()), |o| o.core = true);
        }
        for r in &r_iota {
            add(r, |o| o.iota = true);
        }
        for r in &r_tau {
            add(r, |o| o.tau = true);
        }
        let combined = Arc::new(RewritingSystem::new(
            base.names().to_vec(),
            rules,
            base.distinguished(),
        )?);
        Ok(SemiCompletion {
            core: core.clone(),
            tables,
            r_iota,
            r_tau,
            combined,
            origins,
            degenerate,
        })
    }

    pub fn core(&self) -> &Core {
        &self.core
    }

    /// The core system `P`.
    pub fn base(&self) -> &Arc<RewritingSystem> {
        self.core.system()
    }

    /// `P′`; rule `i < |R|` is rule `i` of `P`.
    pub fn combined(&self) -> &Arc<RewritingSystem> {
        &self.combined
    }

    pub fn tables(&self) -> &MinimalPathTables {
        &self.tables
    }

    pub fn r_iota(&self) -> &[(Word, Word)] {
        &self.r_iota
    }

    pub fn r_tau(&self) -> &[(Word, Word)] {
        &self.r_tau
    }

    pub fn origin(&self, rule: usize) -> RuleOrigin {
        self.origins[rule]
    }

    pub fn origins(&self) -> &[RuleOrigin] {
        &self.origins
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// Initial vertex of the path `w` (which must be non-empty).
    pub(crate) fn start(&self, w: &[Letter]) -> usize {
        self.core.edges()[w[0].index()].0
    }

    /// Terminal vertex of the path `w` (which must be non-empty).
    pub(crate) fn end(&self, w: &[Letter]) -> usize {
        self.core.edges()[w[w.len() - 1].index()].1
    }

    pub(crate) fn require_generic(&self) -> Result<()> {
        if self.degenerate {
            return Err(Error::DegenerateCore(
                "the core has ι = τ; its semi-completion is not defined".into(),
            ));
        }
        Ok(())
    }
}
