//! The Stallings 2-core of a finitely generated subgroup of F.
//!
//! Each generator's `(x,x)`-diagram is materialised as a plane graph, every
//! top and bottom edge is glued to a single edge `ρ`, and cells are folded
//! until no two cells share a top edge or a bottom pair. The surviving cells
//! give a tree rewriting system whose diagram group at `ρ` is the closure of
//! the subgroup.

mod membership;
mod text;

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::diagram::{Diagram, PlaneGraph};
use crate::error::{Error, Result};
use crate::rewriting::{Letter, RewritingSystem, Word};
use crate::thompson::TreeDiagram;

pub use membership::{Half, Rejection, Verdict};
pub use text::{format_core, parse_core};

/// A 2-cell with a one-edge top and a two-edge bottom path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CoreCell {
    pub top: usize,
    pub bottom: [usize; 2],
}

/// A folded directed 2-complex with distinguished edge `ρ`.
///
/// Ids are canonical: `ρ` is edge 0, further edges are numbered in
/// breadth-first order from `ρ` through the cells below each edge, `ι` is
/// vertex 0 and cells are sorted by top edge. Edge ids double as letter ids
/// of [`Core::system`] and cell indices as rule ids.
#[derive(Clone, Debug)]
pub struct Core {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    cells: Vec<CoreCell>,
    system: Arc<RewritingSystem>,
}

impl PartialEq for Core {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count
            && self.edges == other.edges
            && self.cells == other.cells
    }
}

impl Eq for Core {}

/// `n` inner vertices, `m` inner edges and `f` cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CoreStats {
    pub n: usize,
    pub m: usize,
    pub f: usize,
    /// `ι = τ`: the counts are reported but the usual source/sink shape
    /// does not hold.
    pub degenerate: bool,
}

/// How a word over the edges sits in the core.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WordClass {
    Empty,
    /// A directed path from `ι` to `τ`: the word is equivalent to `ρ`.
    Full,
    /// A directed path from `ι` ending at `end`: a left divisor of `ρ`.
    FromIota {
        end: usize,
    },
    /// A directed path from `start` to `τ`: a right divisor of `ρ`.
    ToTau {
        start: usize,
    },
    Neither,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes; the smaller id stays the representative.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.parent[hi] = lo;
        true
    }
}

/// Workspace of the folding: raw edges and cells from all generators.
struct Folding {
    edges: UnionFind,
    vertices: UnionFind,
    ends: Vec<(usize, usize)>,
    cells: Vec<CoreCell>,
}

impl Folding {
    fn merge_edges(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.edges.find(a), self.edges.find(b));
        if !self.edges.union(ra, rb) {
            return false;
        }
        let (sa, da) = self.ends[ra];
        let (sb, db) = self.ends[rb];
        self.vertices.union(sa, sb);
        self.vertices.union(da, db);
        true
    }

    fn canon(&mut self, c: CoreCell) -> CoreCell {
        CoreCell {
            top: self.edges.find(c.top),
            bottom: [self.edges.find(c.bottom[0]), self.edges.find(c.bottom[1])],
        }
    }

    /// Repeated passes until a pass performs no identification.
    fn run(&mut self, mut rng: Option<&mut ChaCha8Rng>) {
        let mut order: Vec<usize> = (0..self.cells.len()).collect();
        loop {
            if let Some(rng) = rng.as_deref_mut() {
                order.shuffle(rng);
            }
            let mut changed = false;
            let mut by_top: HashMap<usize, [usize; 2]> = HashMap::new();
            let mut by_bottom: HashMap<[usize; 2], usize> = HashMap::new();
            for &i in &order {
                let c = self.canon(self.cells[i]);
                match by_top.get(&c.top) {
                    Some(&b) if b != c.bottom => {
                        changed |= self.merge_edges(b[0], c.bottom[0]);
                        changed |= self.merge_edges(b[1], c.bottom[1]);
                    }
                    Some(_) => {}
                    None => {
                        by_top.insert(c.top, c.bottom);
                    }
                }
                match by_bottom.get(&c.bottom) {
                    Some(&t) if t != c.top => changed |= self.merge_edges(t, c.top),
                    Some(_) => {}
                    None => {
                        by_bottom.insert(c.bottom, c.top);
                    }
                }
            }
            if !changed {
                break;
            }
        }
    }
}

fn edge_name(id: usize) -> String {
    match id {
        0 => "ρ".to_string(),
        1..=26 => ((b'a' + (id - 1) as u8) as char).to_string(),
        _ => format!("e{id}"),
    }
}

impl Core {
    /// The core of `⟨gens⟩`.
    pub fn build(gens: &[TreeDiagram]) -> Result<Core> {
        let diagrams: Vec<Diagram> = gens.iter().map(TreeDiagram::to_diagram).collect();
        Core::build_from_diagrams(&diagrams, None)
    }

    /// Same as [`Core::build`] with the generators and the fold queue
    /// permuted by a seeded generator.
    pub fn build_shuffled(gens: &[TreeDiagram], seed: u64) -> Result<Core> {
        let diagrams: Vec<Diagram> = gens.iter().map(TreeDiagram::to_diagram).collect();
        Core::build_from_diagrams(&diagrams, Some(seed))
    }

    /// The core of the subgroup generated by reduced `(x,x)`-diagrams over
    /// `⟨x | xx → x⟩`.
    pub fn build_from_diagrams(gens: &[Diagram], seed: Option<u64>) -> Result<Core> {
        if gens.is_empty() {
            return Err(Error::NoGenerators);
        }
        let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
        let mut order: Vec<usize> = (0..gens.len()).collect();
        if let Some(rng) = rng.as_mut() {
            order.shuffle(rng);
        }
        // Edge 0 is ρ, vertices 0 and 1 are ι and τ.
        let mut ends = vec![(0, 1)];
        let mut cells = Vec::new();
        let mut glue = Vec::new();
        let mut vertex_count = 2;
        for &i in &order {
            let d = &gens[i];
            if !d.is_reduced() {
                return Err(Error::UnreducedGenerator(i));
            }
            TreeDiagram::from_diagram(d).map_err(|_| {
                Error::MalformedDiagram(format!("generator {i} is not an (x,x)-diagram"))
            })?;
            let g = PlaneGraph::build(d, false);
            let (e0, v0) = (ends.len(), vertex_count);
            for e in &g.edges {
                ends.push((v0 + e.src, v0 + e.dst));
            }
            vertex_count += g.vertex_count;
            for c in &g.cells {
                let (one, two) = if c.top.len() == 1 {
                    (&c.top, &c.bottom)
                } else {
                    (&c.bottom, &c.top)
                };
                cells.push(CoreCell {
                    top: e0 + one[0],
                    bottom: [e0 + two[0], e0 + two[1]],
                });
            }
            glue.push(e0 + g.top[0]);
            glue.push(e0 + g.boundary[0]);
        }
        let mut f = Folding {
            edges: UnionFind::new(ends.len()),
            vertices: UnionFind::new(vertex_count),
            ends,
            cells,
        };
        for e in glue {
            f.merge_edges(0, e);
        }
        f.run(rng.as_mut());

        let mut roots = Vec::new();
        for e in 0..f.ends.len() {
            if f.edges.find(e) == e {
                roots.push(e);
            }
        }
        let edges: HashMap<usize, (usize, usize)> = roots
            .iter()
            .map(|&e| {
                let (s, d) = f.ends[e];
                (e, (f.vertices.find(s), f.vertices.find(d)))
            })
            .collect();
        let mut cells: Vec<CoreCell> = f.cells.clone().into_iter().map(|c| f.canon(c)).collect();
        cells.sort();
        cells.dedup();
        Core::from_raw(0, &roots, &edges, &cells)
    }

    /// Canonical relabelling of an arbitrary folded complex.
    fn from_raw(
        rho: usize,
        edge_ids: &[usize],
        ends: &HashMap<usize, (usize, usize)>,
        cells: &[CoreCell],
    ) -> Result<Core> {
        let mut below: HashMap<usize, [usize; 2]> = HashMap::new();
        let mut above: HashMap<[usize; 2], usize> = HashMap::new();
        for c in cells {
            if below.insert(c.top, c.bottom).is_some() {
                return Err(Error::CoreInvariant(format!(
                    "two cells share the top edge {}",
                    c.top
                )));
            }
            if above.insert(c.bottom, c.top).is_some() {
                return Err(Error::CoreInvariant(format!(
                    "two cells share the bottom path {} {}",
                    c.bottom[0], c.bottom[1]
                )));
            }
        }
        for c in cells {
            for e in [c.top, c.bottom[0], c.bottom[1]] {
                if !ends.contains_key(&e) {
                    return Err(Error::CoreInvariant(format!("cell uses unknown edge {e}")));
                }
            }
            let (t, b0, b1) = (ends[&c.top], ends[&c.bottom[0]], ends[&c.bottom[1]]);
            if t.0 != b0.0 || b0.1 != b1.0 || b1.1 != t.1 {
                return Err(Error::CoreInvariant(format!(
                    "cell {} -> {} {} has mismatched endpoints",
                    c.top, c.bottom[0], c.bottom[1]
                )));
            }
        }
        if !ends.contains_key(&rho) {
            return Err(Error::CoreInvariant(format!("ρ = {rho} is not an edge")));
        }

        let mut edge_map: HashMap<usize, usize> = HashMap::new();
        let mut order = Vec::with_capacity(edge_ids.len());
        let mut queue = VecDeque::from([rho]);
        edge_map.insert(rho, 0);
        order.push(rho);
        while let Some(e) = queue.pop_front() {
            if let Some(bottom) = below.get(&e) {
                for &b in bottom {
                    if let std::collections::hash_map::Entry::Vacant(v) = edge_map.entry(b) {
                        v.insert(order.len());
                        order.push(b);
                        queue.push_back(b);
                    }
                }
            }
        }
        for &e in edge_ids {
            if let std::collections::hash_map::Entry::Vacant(v) = edge_map.entry(e) {
                v.insert(order.len());
                order.push(e);
            }
        }
        let mut vertex_map: HashMap<usize, usize> = HashMap::new();
        let mut see = |v: usize| {
            let next = vertex_map.len();
            *vertex_map.entry(v).or_insert(next)
        };
        let (iota, tau) = ends[&rho];
        see(iota);
        see(tau);
        let edges: Vec<(usize, usize)> = order
            .iter()
            .map(|e| {
                let (s, d) = ends[e];
                (see(s), see(d))
            })
            .collect();
        let vertex_count = vertex_map.len();
        let mut cells: Vec<CoreCell> = cells
            .iter()
            .map(|c| CoreCell {
                top: edge_map[&c.top],
                bottom: [edge_map[&c.bottom[0]], edge_map[&c.bottom[1]]],
            })
            .collect();
        cells.sort();
        let system = Arc::new(RewritingSystem::new(
            (0..edges.len()).map(edge_name).collect(),
            cells
                .iter()
                .map(|c| {
                    (
                        Word::from_ids(&[c.bottom[0] as u32, c.bottom[1] as u32]),
                        Word::from_ids(&[c.top as u32]),
                    )
                })
                .collect(),
            Some(Letter(0)),
        )?);
        Ok(Core {
            vertex_count,
            edges,
            cells,
            system,
        })
    }

    /// A core given by explicit parts, relabelled canonically.
    pub fn from_parts(
        vertex_count: usize,
        edges: &[(usize, usize)],
        cells: &[CoreCell],
        rho: usize,
    ) -> Result<Core> {
        if let Some((i, _)) = edges
            .iter()
            .enumerate()
            .find(|(_, &(s, d))| s >= vertex_count || d >= vertex_count)
        {
            return Err(Error::CoreInvariant(format!(
                "edge {i} uses an unknown vertex"
            )));
        }
        let ids: Vec<usize> = (0..edges.len()).collect();
        let ends: HashMap<usize, (usize, usize)> = edges.iter().copied().enumerate().collect();
        let core = Core::from_raw(rho, &ids, &ends, cells)?;
        if core.vertex_count != vertex_count {
            return Err(Error::CoreInvariant(format!(
                "{} of {vertex_count} vertices are isolated",
                vertex_count - core.vertex_count
            )));
        }
        Ok(core)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// `(source, target)` of every edge, indexed by edge id.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn cells(&self) -> &[CoreCell] {
        &self.cells
    }

    pub fn rho(&self) -> usize {
        0
    }

    pub fn iota(&self) -> usize {
        self.edges[0].0
    }

    pub fn tau(&self) -> usize {
        self.edges[0].1
    }

    pub fn is_degenerate(&self) -> bool {
        self.iota() == self.tau()
    }

    /// `⟨E | bot(π) → top(π)⟩` with `ρ` distinguished and least.
    pub fn system(&self) -> &Arc<RewritingSystem> {
        &self.system
    }

    pub fn edge_name(&self, e: usize) -> &str {
        self.system.name(Letter(e as u32))
    }

    pub fn stats(&self) -> CoreStats {
        let degenerate = self.is_degenerate();
        CoreStats {
            n: self.vertex_count - if degenerate { 1 } else { 2 },
            m: self.edges.len() - 1,
            f: self.cells.len(),
            degenerate,
        }
    }

    pub fn classify_word(&self, w: &[Letter]) -> Result<WordClass> {
        self.system.check_word(w)?;
        let Some((first, last)) = w.first().zip(w.last()) else {
            return Ok(WordClass::Empty);
        };
        let chained = w
            .windows(2)
            .all(|p| self.edges[p[0].index()].1 == self.edges[p[1].index()].0);
        if !chained {
            return Ok(WordClass::Neither);
        }
        let start = self.edges[first.index()].0;
        let end = self.edges[last.index()].1;
        Ok(match (start == self.iota(), end == self.tau()) {
            (true, true) => WordClass::Full,
            (true, false) => WordClass::FromIota { end },
            (false, true) => WordClass::ToTau { start },
            (false, false) => WordClass::Neither,
        })
    }

    /// Checks the source/sink shape: in a non-degenerate core `ι` has no
    /// incoming edges, `τ` no outgoing ones, `ρ` is the only `ι→τ` edge and
    /// every vertex lies on a directed `ι→τ` path.
    pub fn check_shape(&self) -> Result<()> {
        if self.is_degenerate() {
            return Ok(());
        }
        let (iota, tau) = (self.iota(), self.tau());
        for (i, &(s, d)) in self.edges.iter().enumerate() {
            if d == iota || s == tau {
                return Err(Error::CoreInvariant(format!(
                    "edge {} touches ι or τ from the wrong side",
                    self.edge_name(i)
                )));
            }
            if i != 0 && s == iota && d == tau {
                return Err(Error::CoreInvariant(format!(
                    "edge {} parallels ρ",
                    self.edge_name(i)
                )));
            }
        }
        let reach = |from: usize, forward: bool| {
            let mut seen = vec![false; self.vertex_count];
            let mut stack = vec![from];
            seen[from] = true;
            while let Some(v) = stack.pop() {
                for &(s, d) in &self.edges {
                    let (a, b) = if forward { (s, d) } else { (d, s) };
                    if a == v && !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
            seen
        };
        let (from_iota, to_tau) = (reach(iota, true), reach(tau, false));
        if let Some(v) = (0..self.vertex_count).find(|&v| !(from_iota[v] && to_tau[v])) {
            return Err(Error::CoreInvariant(format!(
                "vertex {v} is not on a directed path from ι to τ"
            )));
        }
        Ok(())
    }

    /// Graphviz rendering with `ρ` drawn bold.
    pub fn to_dot(&self) -> String {
        use std::fmt::Write as _;
        let mut out = String::from("digraph core {\n  rankdir=LR;\n");
        for v in 0..self.vertex_count {
            let label = match v {
                _ if v == self.iota() && v == self.tau() => "ι=τ".to_string(),
                _ if v == self.iota() => "ι".to_string(),
                _ if v == self.tau() => "τ".to_string(),
                _ => v.to_string(),
            };
            let _ = writeln!(out, "  v{v} [label=\"{label}\"];");
        }
        for (i, &(s, d)) in self.edges.iter().enumerate() {
            let style = if i == 0 {
                ", style=bold, color=red"
            } else {
                ""
            };
            let _ = writeln!(
                out,
                "  v{s} -> v{d} [label=\"{}\"{style}];",
                self.edge_name(i)
            );
        }
        for c in &self.cells {
            let _ = writeln!(
                out,
                "  // cell {} -> {}",
                self.system
                    .format_word(&[Letter(c.bottom[0] as u32), Letter(c.bottom[1] as u32)]),
                self.edge_name(c.top)
            );
        }
        out.push_str("}\n");
        out
    }
}
