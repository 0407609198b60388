//! Generating sets of the closure of a subgroup and the linear-length
//! factorization of its elements.
//!
//! The fundamental group of the Squier complex of `P′` at `ρ` is generated by
//! the classes of the edges `(ι_{ℓ−}, ℓ→r, τ_{ℓ+})` for rules `ℓ→r` outside
//! `R_ι` (the set `X`). The retract `θ` carries these loops to diagrams over
//! `P`, giving a generating set `Y` of the closure inside F.

mod factor;
mod probe;

use std::sync::Arc;

use serde::Serialize;

use crate::completion::SemiCompletion;
use crate::diagram::{Diagram, Move};
use crate::error::{Error, Result};
use crate::rewriting::{
    default_cap, derivation_to_normal_form, find_derivation, Direction, RewritingSystem, Side,
    SquierEdge, Word,
};
use crate::stallings::WordClass;
use crate::thompson::TreeDiagram;

pub use factor::{FactorLetter, FactorWord, Factorization};
pub use probe::{ProbeReport, ProbeSample, ProbeSpec};

#[derive(Clone, Debug)]
pub struct GeneratorX {
    pub index: usize,
    /// Rule id in `P′`.
    pub rule: usize,
    pub edge: SquierEdge,
    /// Reduced `(ρ,ρ)`-diagram over `P′`.
    pub loop_diagram: Diagram,
}

#[derive(Clone, Debug)]
pub struct GeneratorY {
    pub x_index: usize,
    /// Reduced `(ρ,ρ)`-diagram over `P`.
    pub diagram: Diagram,
    pub element: TreeDiagram,
}

/// A semi-completion with the cached data of the closure: `Δ(ℓ→r)` for every
/// rule of `P′`, the generators `X` and their images `Y`.
#[derive(Clone, Debug)]
pub struct Closure {
    sc: SemiCompletion,
    rule_diagrams: Vec<Diagram>,
    x: Vec<GeneratorX>,
    x_of_rule: Vec<Option<usize>>,
    y: Vec<GeneratorY>,
}

impl Closure {
    /// `cap` bounds the search for `Δ(ℓ→r)` over `P`; `None` uses
    /// [`default_cap`] per rule.
    pub fn new(sc: &SemiCompletion, cap: Option<usize>) -> Result<Closure> {
        sc.require_generic()?;
        let base = sc.base().clone();
        let combined = sc.combined().clone();
        let mut rule_diagrams = Vec::with_capacity(combined.rules().len());
        for (i, r) in combined.rules().iter().enumerate() {
            let d = if sc.origin(i).core {
                Diagram::atomic(
                    base.clone(),
                    &SquierEdge::positive(Word::empty(), i, Word::empty()),
                )?
            } else {
                let c = cap.unwrap_or_else(|| default_cap(&r.lhs, &r.rhs));
                let path = find_derivation(&base, &r.lhs, &r.rhs, c).ok_or_else(|| {
                    Error::CapExhausted {
                        from: base.format_word(&r.lhs),
                        to: base.format_word(&r.rhs),
                        cap: c,
                    }
                })?;
                Diagram::from_path(base.clone(), &path)?
            };
            rule_diagrams.push(d);
        }

        let mut closure = Closure {
            sc: sc.clone(),
            rule_diagrams,
            x: Vec::new(),
            x_of_rule: vec![None; combined.rules().len()],
            y: Vec::new(),
        };
        let tables = sc.tables();
        let edges = sc.core().edges();
        for (i, r) in combined.rules().iter().enumerate() {
            if sc.origin(i).iota {
                continue;
            }
            let first = edges[r.lhs[0].index()].0;
            let last = edges[r.lhs[r.lhs.len() - 1].index()].1;
            let edge = SquierEdge::positive(
                tables.iota_of[first].clone(),
                i,
                tables.tau_of[last].clone(),
            );
            let loop_diagram = closure.edge_class_diagram(&edge)?;
            closure.x_of_rule[i] = Some(closure.x.len());
            closure.x.push(GeneratorX {
                index: closure.x.len(),
                rule: i,
                edge,
                loop_diagram,
            });
        }
        let mut y = Vec::with_capacity(closure.x.len());
        for g in &closure.x {
            let diagram = closure.theta(&g.loop_diagram)?;
            let element = TreeDiagram::relabel_into_f(&diagram)?;
            y.push(GeneratorY {
                x_index: g.index,
                diagram,
                element,
            });
        }
        closure.y = y;
        Ok(closure)
    }

    pub fn semi_completion(&self) -> &SemiCompletion {
        &self.sc
    }

    pub fn base(&self) -> &Arc<RewritingSystem> {
        self.sc.base()
    }

    pub fn combined(&self) -> &Arc<RewritingSystem> {
        self.sc.combined()
    }

    pub fn generators_x(&self) -> &[GeneratorX] {
        &self.x
    }

    pub fn generators_y(&self) -> &[GeneratorY] {
        &self.y
    }

    /// The fixed diagram `Δ(ℓ→r)` over `P` for rule `rule` of `P′`.
    pub fn rule_diagram(&self, rule: usize) -> &Diagram {
        &self.rule_diagrams[rule]
    }

    /// Index in `X` of the generator coming from `rule`; `None` for rules of
    /// `R_ι`, whose edges have trivial class.
    pub fn x_letter(&self, rule: usize) -> Option<usize> {
        self.x_of_rule[rule]
    }

    /// `[e]`: the reduced diagram `δ(d^ℓ(u,ρ)⁻¹ · e · d^ℓ(v,ρ))` over `P′`.
    pub fn edge_class_diagram(&self, e: &SquierEdge) -> Result<Diagram> {
        let rs = self.combined();
        rs.rule(e.rule)?;
        let core = self.sc.core();
        let (u, v) = (e.source(rs), e.target(rs));
        for w in [&u, &v] {
            if core.classify_word(w)? != WordClass::Full {
                return Err(Error::OutsideComponent(rs.format_word(w)));
            }
        }
        let du = derivation_to_normal_form(rs, &u, Side::Left);
        let dv = derivation_to_normal_form(rs, &v, Side::Left);
        let rho = Word::from_ids(&[0]);
        if du.target != rho || dv.target != rho {
            return Err(Error::CoreInvariant(format!(
                "left normal forms of `{}` and `{}` are not ρ",
                rs.format_word(&u),
                rs.format_word(&v)
            )));
        }
        let mut path = du.inverse();
        path.edges.push(e.clone());
        path.target = v;
        let path = path.then(dv);
        Ok(Diagram::from_path(rs.clone(), &path)?.reduce())
    }

    /// The retract `θ`: replaces every cell of a diagram over `P′` by the
    /// fixed diagram of its rule and reduces. Diagrams over `P` are returned
    /// reduced and otherwise unchanged.
    pub fn theta(&self, d: &Diagram) -> Result<Diagram> {
        let base = self.base();
        if **d.system() == **base {
            return Ok(self.to_base(d)?.reduce());
        }
        if **d.system() != **self.combined() {
            return Err(Error::SystemMismatch);
        }
        let mut moves = Vec::new();
        for m in d.moves() {
            let sub = &self.rule_diagrams[m.rule];
            let sub_moves: Vec<Move> = match m.direction {
                Direction::Forward => sub.moves().to_vec(),
                Direction::Backward => sub.invert().moves().to_vec(),
            };
            moves.extend(sub_moves.into_iter().map(|s| Move {
                offset: s.offset + m.offset,
                ..s
            }));
        }
        Ok(Diagram::new(base.clone(), d.top().clone(), moves)?.reduce())
    }

    /// The same trace read over `P′`. Rule ids of `P` are rule ids of `P′`.
    pub fn to_combined(&self, d: &Diagram) -> Result<Diagram> {
        if **d.system() == **self.combined() {
            return Ok(d.clone());
        }
        if **d.system() != **self.base() {
            return Err(Error::SystemMismatch);
        }
        d.relabel(self.combined().clone(), d.top().clone(), |r| r)
    }

    fn to_base(&self, d: &Diagram) -> Result<Diagram> {
        if Arc::ptr_eq(d.system(), self.base()) {
            return Ok(d.clone());
        }
        d.relabel(self.base().clone(), d.top().clone(), |r| r)
    }

    /// Product of `Y` generators as a reduced diagram over `P`.
    pub fn y_product(&self, word: &FactorWord) -> Result<Diagram> {
        self.product(word, |i| &self.y[i].diagram, self.base())
    }

    /// Product of `X` loops as a reduced diagram over `P′`.
    pub fn x_product(&self, word: &FactorWord) -> Result<Diagram> {
        self.product(word, |i| &self.x[i].loop_diagram, self.combined())
    }

    fn product<'a>(
        &'a self,
        word: &FactorWord,
        get: impl Fn(usize) -> &'a Diagram,
        rs: &Arc<RewritingSystem>,
    ) -> Result<Diagram> {
        let mut moves = Vec::new();
        for l in &word.letters {
            let d = get(l.index);
            if l.exponent > 0 {
                moves.extend_from_slice(d.moves());
            } else {
                moves.extend_from_slice(d.invert().moves());
            }
        }
        Ok(Diagram::new(rs.clone(), Word::from_ids(&[0]), moves)?.reduce())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosureStats {
    pub x: usize,
    pub y: usize,
    pub bound: usize,
}

impl Closure {
    /// `|X|`, `|Y|` and the bound `m − n + f`.
    pub fn stats(&self) -> ClosureStats {
        let s = self.sc.core().stats();
        ClosureStats {
            x: self.x.len(),
            y: self.y.len(),
            bound: (s.m + s.f).saturating_sub(s.n),
        }
    }
}
