use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::dyadic::DyadicRational;
use super::element::{BranchPairs, TreeDiagram};
use crate::error::{Error, Result};

/// One linear piece starting at `start` with `f(start) = value` and slope
/// `2^slope_log2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlPiece {
    pub start: DyadicRational,
    pub value: DyadicRational,
    pub slope_log2: i64,
}

/// The piecewise-linear view of an element: maximal linear pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlMap {
    pieces: Vec<PlPiece>,
}

impl PlMap {
    pub fn pieces(&self) -> &[PlPiece] {
        &self.pieces
    }

    /// Interior breakpoints in `(0,1)`.
    pub fn breakpoints(&self) -> Vec<DyadicRational> {
        self.pieces[1..].iter().map(|p| p.start.clone()).collect()
    }

    pub fn slopes(&self) -> Vec<i64> {
        self.pieces.iter().map(|p| p.slope_log2).collect()
    }

    fn piece_end(&self, i: usize) -> DyadicRational {
        self.pieces
            .get(i + 1)
            .map_or_else(DyadicRational::one, |p| p.start.clone())
    }

    /// Exact evaluation at an arbitrary rational point of `[0,1]`.
    pub fn eval_rational(&self, t: &BigRational) -> BigRational {
        let i = self
            .pieces
            .partition_point(|p| p.start.to_rational() <= *t)
            .saturating_sub(1);
        let p = &self.pieces[i];
        p.value.to_rational() + (t - p.start.to_rational()) * pow2(p.slope_log2)
    }
}

fn pow2(k: i64) -> BigRational {
    let m = BigInt::one() << k.unsigned_abs();
    if k >= 0 {
        BigRational::from_integer(m)
    } else {
        BigRational::new(BigInt::one(), m)
    }
}

impl fmt::Display for PlMap {
    /// One `start value slope` row per piece.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:>12} {:>12} {:>8}", "breakpoint", "value", "slope")?;
        for p in &self.pieces {
            let slope = if p.slope_log2 >= 0 {
                format!("{}", BigInt::one() << p.slope_log2 as u32)
            } else {
                format!("1/{}", BigInt::one() << (-p.slope_log2) as u32)
            };
            writeln!(
                f,
                "{:>12} {:>12} {:>8}",
                p.start.to_string(),
                p.value.to_string(),
                slope
            )?;
        }
        Ok(())
    }
}

/// A maximal open interval moved by an element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbital {
    #[serde(serialize_with = "ser_rational")]
    pub start: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub end: BigRational,
    pub push_up: bool,
}

fn ser_rational<S: serde::Serializer>(
    r: &BigRational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl TreeDiagram {
    pub fn pl_map(&self) -> PlMap {
        let mut pieces: Vec<PlPiece> = Vec::new();
        for (u, v) in self.to_branch_pairs().pairs() {
            let slope_log2 = u.len() as i64 - v.len() as i64;
            if pieces.last().is_some_and(|p| p.slope_log2 == slope_log2) {
                continue;
            }
            pieces.push(PlPiece {
                start: DyadicRational::from_bits(u),
                value: DyadicRational::from_bits(v),
                slope_log2,
            });
        }
        PlMap { pieces }
    }

    /// Orbitals in increasing order, each tagged with the sign of `f(x) − x`.
    pub fn orbitals(&self) -> Vec<Orbital> {
        let pl = self.pl_map();
        // Closed components of the fixed-point set, as (lo, hi).
        let mut fixed: Vec<(BigRational, BigRational)> = vec![
            (BigRational::zero(), BigRational::zero()),
            (BigRational::one(), BigRational::one()),
        ];
        for (i, p) in pl.pieces.iter().enumerate() {
            let a = p.start.to_rational();
            let b = pl.piece_end(i).to_rational();
            let fa = p.value.to_rational();
            if p.slope_log2 == 0 {
                if fa == a {
                    fixed.push((a, b));
                }
                continue;
            }
            let s = pow2(p.slope_log2);
            let x = (&fa - &s * &a) / (BigRational::one() - &s);
            if a <= x && x <= b {
                fixed.push((x.clone(), x));
            }
        }
        fixed.sort();
        let mut merged: Vec<(BigRational, BigRational)> = Vec::new();
        for (lo, hi) in fixed {
            match merged.last_mut() {
                Some(last) if lo <= last.1 => {
                    if hi > last.1 {
                        last.1 = hi;
                    }
                }
                _ => merged.push((lo, hi)),
            }
        }
        merged
            .windows(2)
            .map(|w| {
                let (start, end) = (w[0].1.clone(), w[1].0.clone());
                let mid = (&start + &end) / BigRational::from_integer(2.into());
                let push_up = pl.eval_rational(&mid) > mid;
                Orbital {
                    start,
                    end,
                    push_up,
                }
            })
            .collect()
    }

    /// The closure of the union of the orbitals, as disjoint closed intervals.
    pub fn support(&self) -> Vec<(BigRational, BigRational)> {
        let mut out: Vec<(BigRational, BigRational)> = Vec::new();
        for o in self.orbitals() {
            match out.last_mut() {
                Some(last) if last.1 == o.start => last.1 = o.end,
                _ => out.push((o.start, o.end)),
            }
        }
        out
    }

    /// `(g₁, g₂)` with `g₁ = g` on `[0,α]` and the identity after, `g₂` the
    /// mirror image; `g = g₁·g₂`.
    pub fn components_at(&self, alpha: &DyadicRational) -> Result<(TreeDiagram, TreeDiagram)> {
        if *alpha <= DyadicRational::zero() || *alpha >= DyadicRational::one() {
            return Err(Error::NotFixed(format!("{alpha} is not inside (0,1)")));
        }
        if self.evaluate(alpha)? != *alpha {
            return Err(Error::NotFixed(format!("the element moves {alpha}")));
        }
        let mut b = self.to_branch_pairs();
        let k = loop {
            let found = b.pairs().iter().enumerate().find_map(|(i, (u, _))| {
                let start = DyadicRational::from_bits(u);
                if start == *alpha {
                    return Some(Ok(i));
                }
                let end = start.add(&DyadicRational::new(1, u.len() as u32));
                (start < *alpha && *alpha < end).then_some(Err(i))
            });
            match found {
                Some(Ok(i)) => break i,
                Some(Err(i)) => b.split(i),
                None => unreachable!("the domain leaves tile [0,1)"),
            }
        };
        let (left, right) = b.pairs().split_at(k);
        let fix = |(u, _): &(Vec<bool>, Vec<bool>)| (u.clone(), u.clone());
        let g1: Vec<_> = left.iter().cloned().chain(right.iter().map(fix)).collect();
        let g2: Vec<_> = left.iter().map(fix).chain(right.iter().cloned()).collect();
        Ok((
            TreeDiagram::from_branch_pairs(&BranchPairs::from_pairs_unchecked(g1)),
            TreeDiagram::from_branch_pairs(&BranchPairs::from_pairs_unchecked(g2)),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> DyadicRational {
        s.parse().unwrap()
    }

    fn q(n: i64, m: i64) -> BigRational {
        BigRational::new(n.into(), m.into())
    }

    #[test]
    fn x0_pieces() {
        let pl = TreeDiagram::x0().pl_map();
        assert_eq!(pl.breakpoints(), vec![d("1/4"), d("1/2")]);
        assert_eq!(pl.slopes(), vec![1, 0, -1]);
        assert_eq!(pl.eval_rational(&q(1, 3)), q(7, 12));
        assert!(pl.to_string().contains("1/2"));
    }

    #[test]
    fn identity_has_one_piece_and_no_orbitals() {
        let id = TreeDiagram::identity();
        assert_eq!(id.pl_map().pieces().len(), 1);
        assert!(id.orbitals().is_empty());
        assert!(id.support().is_empty());
    }

    #[test]
    fn generator_orbitals() {
        let o = TreeDiagram::x0().orbitals();
        assert_eq!(o.len(), 1);
        assert_eq!(
            (o[0].start.clone(), o[0].end.clone(), o[0].push_up),
            (q(0, 1), q(1, 1), true)
        );
        let o = TreeDiagram::x1().orbitals();
        assert_eq!(o.len(), 1);
        assert_eq!(
            (o[0].start.clone(), o[0].end.clone(), o[0].push_up),
            (q(1, 2), q(1, 1), true)
        );
        let o = TreeDiagram::x0().inverse().orbitals();
        assert!(!o[0].push_up);
    }

    #[test]
    fn x1_splits_at_one_half() {
        let (g1, g2) = TreeDiagram::x1().components_at(&d("1/2")).unwrap();
        assert!(g1.is_identity());
        assert_eq!(g2, TreeDiagram::x1());
        assert!(TreeDiagram::x0().components_at(&d("1/2")).is_err());
        let (a, b) = TreeDiagram::identity().components_at(&d("3/8")).unwrap();
        assert!(a.is_identity() && b.is_identity());
    }
}
