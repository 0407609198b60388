use std::collections::VecDeque;
use std::fmt;

use rand::Rng;

use super::dyadic::DyadicRational;
use super::tree::{check_prefix_code, format_branch, Branch, Tree};
use crate::error::{Error, Result};

/// An element of F as its table of branch pairs `uᵢ → vᵢ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BranchPairs {
    pairs: Vec<(Branch, Branch)>,
}

impl BranchPairs {
    /// Checks that both columns are complete prefix codes listed left to right.
    pub fn new(pairs: Vec<(Branch, Branch)>) -> Result<Self> {
        let us: Vec<Branch> = pairs.iter().map(|p| p.0.clone()).collect();
        let vs: Vec<Branch> = pairs.iter().map(|p| p.1.clone()).collect();
        check_prefix_code(&us).map_err(|e| Error::BadBranchPairs(format!("domain: {e}")))?;
        check_prefix_code(&vs).map_err(|e| Error::BadBranchPairs(format!("range: {e}")))?;
        Ok(BranchPairs { pairs })
    }

    pub fn identity() -> Self {
        BranchPairs {
            pairs: vec![(Vec::new(), Vec::new())],
        }
    }

    pub fn pairs(&self) -> &[(Branch, Branch)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Merges sibling pairs `(p0→q0, p1→q1)` into `p→q` until none remain.
    pub fn reduced(&self) -> BranchPairs {
        let mut stack: Vec<(Branch, Branch)> = Vec::with_capacity(self.pairs.len());
        for pair in &self.pairs {
            stack.push(pair.clone());
            while stack.len() >= 2 {
                let (u1, v1) = &stack[stack.len() - 1];
                let (u0, v0) = &stack[stack.len() - 2];
                if !(are_siblings(u0, u1) && are_siblings(v0, v1)) {
                    break;
                }
                let (mut u, mut v) = stack.pop().unwrap();
                stack.pop();
                u.pop();
                v.pop();
                stack.push((u, v));
            }
        }
        BranchPairs { pairs: stack }
    }

    /// Replaces pair `i` by its two halves.
    pub(crate) fn split(&mut self, i: usize) {
        let (u, v) = self.pairs[i].clone();
        let child = |w: &Branch, b: bool| {
            let mut w = w.clone();
            w.push(b);
            w
        };
        self.pairs.splice(
            i..=i,
            [
                (child(&u, false), child(&v, false)),
                (child(&u, true), child(&v, true)),
            ],
        );
    }

    pub(crate) fn from_pairs_unchecked(pairs: Vec<(Branch, Branch)>) -> Self {
        BranchPairs { pairs }
    }
}

fn are_siblings(a: &[bool], b: &[bool]) -> bool {
    a.len() == b.len()
        && !a.is_empty()
        && a[..a.len() - 1] == b[..b.len() - 1]
        && !a[a.len() - 1]
        && b[b.len() - 1]
}

impl fmt::Display for BranchPairs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (u, v) in &self.pairs {
            writeln!(f, "{} -> {}", format_branch(u), format_branch(v))?;
        }
        Ok(())
    }
}

/// A reduced pair of full binary trees `(T₊, T₋)` with equally many leaves.
///
/// Products compose left to right: `g·h` applies `g` first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TreeDiagram {
    plus: Tree,
    minus: Tree,
}

impl TreeDiagram {
    pub fn new(plus: Tree, minus: Tree) -> Result<Self> {
        if plus.leaves() != minus.leaves() {
            return Err(Error::BadBranchPairs(format!(
                "trees have {} and {} leaves",
                plus.leaves(),
                minus.leaves()
            )));
        }
        let pairs = plus.branches().into_iter().zip(minus.branches()).collect();
        Ok(Self::from_reduced(&BranchPairs { pairs }.reduced()))
    }

    pub fn identity() -> Self {
        TreeDiagram {
            plus: Tree::leaf(),
            minus: Tree::leaf(),
        }
    }

    pub fn from_branch_pairs(b: &BranchPairs) -> Self {
        Self::from_reduced(&b.reduced())
    }

    fn from_reduced(b: &BranchPairs) -> Self {
        let us: Vec<Branch> = b.pairs.iter().map(|p| p.0.clone()).collect();
        let vs: Vec<Branch> = b.pairs.iter().map(|p| p.1.clone()).collect();
        TreeDiagram {
            plus: Tree::from_branches(&us).expect("validated prefix code"),
            minus: Tree::from_branches(&vs).expect("validated prefix code"),
        }
    }

    pub fn to_branch_pairs(&self) -> BranchPairs {
        BranchPairs {
            pairs: self
                .plus
                .branches()
                .into_iter()
                .zip(self.minus.branches())
                .collect(),
        }
    }

    pub fn plus(&self) -> &Tree {
        &self.plus
    }

    pub fn minus(&self) -> &Tree {
        &self.minus
    }

    /// Carets of `T₊` plus carets of `T₋`.
    pub fn carets(&self) -> usize {
        self.plus.carets() + self.minus.carets()
    }

    pub fn is_identity(&self) -> bool {
        self.plus.carets() == 0
    }

    /// `self·other`: first `self`, then `other`.
    pub fn multiply(&self, other: &TreeDiagram) -> TreeDiagram {
        let mut g: VecDeque<(Branch, Branch)> = self.to_branch_pairs().pairs.into();
        let mut h: VecDeque<(Branch, Branch)> = other.to_branch_pairs().pairs.into();
        let mut out = Vec::with_capacity(g.len() + h.len());
        while let (Some((u, v)), Some((a, b))) = (g.pop_front(), h.pop_front()) {
            if v == a {
                out.push((u, b));
            } else if v.len() < a.len() {
                let [p0, p1] = halves(u, v);
                g.push_front(p1);
                g.push_front(p0);
                h.push_front((a, b));
            } else {
                let [p0, p1] = halves(a, b);
                h.push_front(p1);
                h.push_front(p0);
                g.push_front((u, v));
            }
        }
        debug_assert!(g.is_empty() && h.is_empty());
        Self::from_reduced(&BranchPairs { pairs: out }.reduced())
    }

    pub fn inverse(&self) -> TreeDiagram {
        TreeDiagram {
            plus: self.minus.clone(),
            minus: self.plus.clone(),
        }
    }

    pub fn pow(&self, n: i64) -> TreeDiagram {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = TreeDiagram::identity();
        for _ in 0..n.unsigned_abs() {
            acc = acc.multiply(&base);
        }
        acc
    }

    /// `a⁻¹·self·a`
    pub fn conjugate(&self, a: &TreeDiagram) -> TreeDiagram {
        a.inverse().multiply(self).multiply(a)
    }

    /// `a⁻¹b⁻¹ab`
    pub fn commutator(a: &TreeDiagram, b: &TreeDiagram) -> TreeDiagram {
        a.inverse().multiply(&b.inverse()).multiply(a).multiply(b)
    }

    /// The image of `t ∈ [0,1]`.
    pub fn evaluate(&self, t: &DyadicRational) -> Result<DyadicRational> {
        if !t.in_unit_interval() {
            return Err(Error::BadBranchPairs(format!("{t} is outside [0,1]")));
        }
        if *t == DyadicRational::one() {
            return Ok(DyadicRational::one());
        }
        for (u, v) in self.to_branch_pairs().pairs {
            let start = DyadicRational::from_bits(&u);
            let end = start.add(&DyadicRational::new(1, u.len() as u32));
            if start <= *t && *t < end {
                let offset = t.sub(&start).shift(u.len() as i64 - v.len() as i64);
                return Ok(DyadicRational::from_bits(&v).add(&offset));
            }
        }
        unreachable!("the domain leaves tile [0,1)")
    }

    /// `x₀ = {00→0, 01→10, 1→11}`
    pub fn x0() -> TreeDiagram {
        Self::from_table(&[("00", "0"), ("01", "10"), ("1", "11")])
    }

    /// `x₁ = {0→0, 100→10, 101→110, 11→111}`
    pub fn x1() -> TreeDiagram {
        Self::from_table(&[("0", "0"), ("100", "10"), ("101", "110"), ("11", "111")])
    }

    /// `xₙ = x₀^{-(n-1)} x₁ x₀^{n-1}` for `n ≥ 1`.
    pub fn x(n: usize) -> TreeDiagram {
        match n {
            0 => Self::x0(),
            _ => Self::x1().conjugate(&Self::x0().pow(n as i64 - 1)),
        }
    }

    fn from_table(rows: &[(&str, &str)]) -> TreeDiagram {
        let pairs = rows
            .iter()
            .map(|(u, v)| {
                (
                    super::tree::parse_branch(u).unwrap(),
                    super::tree::parse_branch(v).unwrap(),
                )
            })
            .collect();
        Self::from_branch_pairs(&BranchPairs::new(pairs).expect("valid table"))
    }

    /// A random element from two independently grown trees with `carets`
    /// carets each, then reduced.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, carets: usize) -> TreeDiagram {
        let plus = Tree::random(rng, carets);
        let minus = Tree::random(rng, carets);
        TreeDiagram::new(plus, minus).expect("equal leaf counts")
    }
}

fn halves(u: Branch, v: Branch) -> [(Branch, Branch); 2] {
    let mut u0 = u.clone();
    let mut v0 = v.clone();
    let (mut u1, mut v1) = (u, v);
    u0.push(false);
    v0.push(false);
    u1.push(true);
    v1.push(true);
    [(u0, v0), (u1, v1)]
}

impl fmt::Display for TreeDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_branch_pairs())
    }
}

/// A random element; see [`TreeDiagram::random`].
pub fn random_element<R: Rng + ?Sized>(rng: &mut R, carets: usize) -> TreeDiagram {
    TreeDiagram::random(rng, carets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thompson::tree::parse_branch;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn d(s: &str) -> DyadicRational {
        s.parse().unwrap()
    }

    fn pairs(rows: &[(&str, &str)]) -> BranchPairs {
        BranchPairs::new(
            rows.iter()
                .map(|(u, v)| (parse_branch(u).unwrap(), parse_branch(v).unwrap()))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn generator_tables() {
        let x0 = TreeDiagram::x0();
        assert_eq!(x0.carets(), 4);
        assert_eq!(x0.to_string(), "00 -> 0\n01 -> 10\n1 -> 11\n");
        assert_eq!(x0.evaluate(&d("1/4")).unwrap(), d("1/2"));
        assert_eq!(x0.evaluate(&d("0")).unwrap(), d("0"));
        assert_eq!(x0.evaluate(&d("1")).unwrap(), d("1"));
        assert_eq!(x0.evaluate(&d("1/2")).unwrap(), d("3/4"));
        let x1 = TreeDiagram::x1();
        assert_eq!(x1.evaluate(&d("1/4")).unwrap(), d("1/4"));
        assert_eq!(x1.evaluate(&d("5/8")).unwrap(), d("3/4"));
        assert_eq!(x1.to_branch_pairs().len(), 4);
    }

    #[test]
    fn identity_table_reduces() {
        let id = TreeDiagram::from_branch_pairs(&pairs(&[("0", "0"), ("1", "1")]));
        assert!(id.is_identity());
        assert_eq!(id, TreeDiagram::identity());
    }

    #[test]
    fn bad_tables_are_rejected() {
        let bad = |rows: &[(&str, &str)]| {
            BranchPairs::new(
                rows.iter()
                    .map(|(u, v)| (parse_branch(u).unwrap(), parse_branch(v).unwrap()))
                    .collect(),
            )
        };
        assert!(bad(&[("0", "0")]).is_err());
        assert!(bad(&[("0", "1"), ("1", "0")]).is_err());
        assert!(bad(&[("0", "0"), ("0", "1"), ("1", "1")]).is_err());
    }

    #[test]
    fn product_and_inverse() {
        let (x0, x1) = (TreeDiagram::x0(), TreeDiagram::x1());
        assert_eq!(x0.multiply(&x1).evaluate(&d("1/2")).unwrap(), d("7/8"));
        assert!(x0.multiply(&x0.inverse()).is_identity());
        assert!(x1.inverse().multiply(&x1).is_identity());
        let x2 = TreeDiagram::x(2);
        assert_eq!(x2.evaluate(&d("1/2")).unwrap(), d("1/2"));
        assert_ne!(x2.evaluate(&d("13/16")).unwrap(), d("13/16"));
    }

    #[test]
    fn relators_vanish() {
        let (x0, x1) = (TreeDiagram::x0(), TreeDiagram::x1());
        let a = x0.multiply(&x1.inverse());
        assert!(TreeDiagram::commutator(&a, &TreeDiagram::x(2)).is_identity());
        assert!(TreeDiagram::commutator(&a, &TreeDiagram::x(3)).is_identity());
        assert!(!TreeDiagram::commutator(&x0, &x1).is_identity());
    }

    #[test]
    fn random_elements_are_reduced_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let g = random_element(&mut rng, 6);
            let b = g.to_branch_pairs();
            assert_eq!(b.reduced(), b);
            assert_eq!(TreeDiagram::from_branch_pairs(&b), g);
        }
    }
}
