use rand::Rng;

use crate::error::{Error, Result};

/// A finite binary word naming a node of the infinite binary tree; `false` is
/// a left turn.
pub type Branch = Vec<bool>;

pub fn format_branch(b: &[bool]) -> String {
    if b.is_empty() {
        "ε".to_string()
    } else {
        b.iter().map(|&x| if x { '1' } else { '0' }).collect()
    }
}

pub fn parse_branch(s: &str) -> Option<Branch> {
    match s {
        "ε" | "-" => Some(Vec::new()),
        _ => s
            .chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect(),
    }
}

/// A full finite binary tree stored as its preorder caret shape: `true` for a
/// caret (internal node), `false` for a leaf.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tree {
    shape: Vec<bool>,
}

impl Tree {
    pub fn leaf() -> Self {
        Tree { shape: vec![false] }
    }

    pub fn from_shape(shape: Vec<bool>) -> Result<Self> {
        let mut open = 1usize;
        for (i, &b) in shape.iter().enumerate() {
            if open == 0 {
                return Err(Error::BadBranchPairs(format!(
                    "tree shape has trailing nodes after position {i}"
                )));
            }
            if b {
                open += 1;
            } else {
                open -= 1;
            }
        }
        if open != 0 {
            return Err(Error::BadBranchPairs("tree shape is incomplete".into()));
        }
        Ok(Tree { shape })
    }

    pub fn shape(&self) -> &[bool] {
        &self.shape
    }

    pub fn carets(&self) -> usize {
        self.shape.iter().filter(|&&b| b).count()
    }

    pub fn leaves(&self) -> usize {
        self.carets() + 1
    }

    /// Leaf addresses, left to right.
    pub fn branches(&self) -> Vec<Branch> {
        let mut out = Vec::with_capacity(self.leaves());
        let mut path: Branch = Vec::new();
        for &b in &self.shape {
            if b {
                path.push(false);
            } else {
                out.push(path.clone());
                // Climb past finished right children, then turn right.
                while path.last() == Some(&true) {
                    path.pop();
                }
                if let Some(last) = path.last_mut() {
                    *last = true;
                }
            }
        }
        out
    }

    /// The tree whose leaves are exactly `branches`, which must be listed left
    /// to right and form a complete prefix code.
    pub fn from_branches(branches: &[Branch]) -> Result<Self> {
        check_prefix_code(branches)?;
        let mut shape = Vec::with_capacity(2 * branches.len());
        build_shape(branches, 0, &mut shape);
        Ok(Tree { shape })
    }

    /// A uniformly grown random tree: split a random leaf `carets` times.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, carets: usize) -> Self {
        let mut leaves: Vec<Branch> = vec![Vec::new()];
        for _ in 0..carets {
            let i = rng.gen_range(0..leaves.len());
            let mut left = leaves[i].clone();
            let mut right = left.clone();
            left.push(false);
            right.push(true);
            leaves.splice(i..=i, [left, right]);
        }
        Tree::from_branches(&leaves).expect("split leaves form a prefix code")
    }
}

fn build_shape(branches: &[Branch], depth: usize, shape: &mut Vec<bool>) {
    if branches.len() == 1 && branches[0].len() == depth {
        shape.push(false);
        return;
    }
    shape.push(true);
    let split = branches.partition_point(|b| !b[depth]);
    build_shape(&branches[..split], depth + 1, shape);
    build_shape(&branches[split..], depth + 1, shape);
}

/// Checks that `words`, in the given order, are the leaves of a full binary
/// tree: their dyadic intervals tile `[0,1)` left to right.
pub(crate) fn check_prefix_code(words: &[Branch]) -> Result<()> {
    if words.is_empty() {
        return Err(Error::BadBranchPairs("no branches".into()));
    }
    // The leaf after w starts at w with trailing 1s dropped and the last 0 set.
    let mut expected: Option<Branch> = Some(Vec::new());
    for (i, w) in words.iter().enumerate() {
        let Some(start) = &expected else {
            return Err(Error::BadBranchPairs(format!(
                "branch {} lies beyond the end of the interval",
                format_branch(w)
            )));
        };
        // `w` must start exactly where the previous leaf ended: it is `start`
        // followed only by zeros.
        if w.len() < start.len()
            || w[..start.len()] != start[..]
            || w[start.len()..].iter().any(|&b| b)
        {
            return Err(Error::BadBranchPairs(format!(
                "branch #{i} ({}) does not continue the prefix code",
                format_branch(w)
            )));
        }
        let mut next = w.clone();
        while next.last() == Some(&true) {
            next.pop();
        }
        expected = match next.pop() {
            Some(_) => {
                next.push(true);
                Some(next)
            }
            None => None,
        };
    }
    if expected.is_some() {
        return Err(Error::BadBranchPairs("branches do not cover [0,1]".into()));
    }
    Ok(())
}
