use serde::Serialize;

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FreeLetter {
    pub generator: usize,
    pub inverse: bool,
}

impl FreeLetter {
    pub fn pos(generator: usize) -> Self {
        FreeLetter {
            generator,
            inverse: false,
        }
    }

    pub fn neg(generator: usize) -> Self {
        FreeLetter {
            generator,
            inverse: true,
        }
    }

    pub fn inv(self) -> Self {
        FreeLetter {
            inverse: !self.inverse,
            ..self
        }
    }
}

/// Freely reduced form of `w`.
pub fn free_reduce(w: &[FreeLetter]) -> Vec<FreeLetter> {
    let mut out: Vec<FreeLetter> = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn free_inverse(w: &[FreeLetter]) -> Vec<FreeLetter> {
    w.iter().rev().map(|l| l.inv()).collect()
}

pub fn positive(w: &[usize]) -> Vec<FreeLetter> {
    w.iter().map(|&g| FreeLetter::pos(g)).collect()
}

/// `Some(w)` when every letter of `w` is positive.
pub fn as_positive(w: &[FreeLetter]) -> Option<Vec<usize>> {
    w.iter()
        .map(|l| (!l.inverse).then_some(l.generator))
        .collect()
}

/// True when `a` and `b` are equal in the free group.
pub fn free_equal(a: &[FreeLetter], b: &[FreeLetter]) -> bool {
    free_reduce(a) == free_reduce(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_words(len: usize, gens: usize) -> Vec<Vec<FreeLetter>> {
        let letters: Vec<FreeLetter> = (0..gens)
            .flat_map(|g| [FreeLetter::pos(g), FreeLetter::neg(g)])
            .collect();
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|w| {
                    letters.iter().map(move |&l| {
                        let mut w2 = w.clone();
                        w2.push(l);
                        w2
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn reduce_is_idempotent_and_reduced() {
        for len in 0..=5 {
            for w in all_words(len, 2) {
                let r = free_reduce(&w);
                assert_eq!(free_reduce(&r), r);
                assert!(r.windows(2).all(|p| p[0] != p[1].inv()));
            }
        }
    }

    #[test]
    fn inverse_cancels() {
        for w in all_words(4, 2) {
            let mut ww = w.clone();
            ww.extend(free_inverse(&w));
            assert!(free_reduce(&ww).is_empty());
        }
    }

    #[test]
    fn reduction_respects_concatenation() {
        let words = all_words(3, 2);
        for a in &words {
            for b in words.iter().step_by(7) {
                let mut ab = a.clone();
                ab.extend_from_slice(b);
                let mut rab = free_reduce(a);
                rab.extend(free_reduce(b));
                assert_eq!(free_reduce(&ab), free_reduce(&rab));
            }
        }
    }

    #[test]
    fn positivity() {
        assert_eq!(as_positive(&positive(&[0, 2, 1])), Some(vec![0, 2, 1]));
        assert_eq!(as_positive(&[FreeLetter::neg(0)]), None);
    }
}
