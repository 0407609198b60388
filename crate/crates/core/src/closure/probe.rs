use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{Closure, FactorLetter, FactorWord};
use crate::error::Result;
use crate::thompson::TreeDiagram;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ProbeSpec {
    pub samples: usize,
    /// Products have between 0 and this many `Y` factors.
    pub max_length: usize,
    pub seed: u64,
}

impl Default for ProbeSpec {
    fn default() -> Self {
        ProbeSpec {
            samples: 1000,
            max_length: 10,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeSample {
    pub index: usize,
    pub product_length: usize,
    /// `N` of the reduced diagram over `P`.
    pub cells: usize,
    pub factor_length: usize,
    /// Cells of the element's reduced diagram over `⟨x | xx → x⟩`.
    pub f_cells: usize,
    pub ratio: Option<f64>,
    pub bound_holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub schema: u32,
    pub spec: ProbeSpec,
    pub generators: usize,
    pub max_ratio: f64,
    pub violations: usize,
    pub samples: Vec<ProbeSample>,
}

impl Closure {
    /// A random word of `Y` letters; sample `i` is determined by
    /// `(spec.seed, i)` alone.
    pub fn sample_word(&self, spec: &ProbeSpec, i: usize) -> FactorWord {
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        rng.set_stream(i as u64);
        let mut word = FactorWord::default();
        if self.y.is_empty() {
            return word;
        }
        let len = rng.gen_range(0..=spec.max_length);
        for _ in 0..len {
            word.letters.push(FactorLetter {
                index: rng.gen_range(0..self.y.len()),
                exponent: if rng.gen_bool(0.5) { 1 } else { -1 },
            });
        }
        word
    }

    fn probe_one(&self, spec: &ProbeSpec, index: usize) -> Result<ProbeSample> {
        let word = self.sample_word(spec, index);
        let d = self.y_product(&word)?;
        let f = self.factorize(&d)?;
        let element = TreeDiagram::relabel_into_f(&d)?;
        Ok(ProbeSample {
            index,
            product_length: word.len(),
            cells: f.cells,
            factor_length: f.word.len(),
            f_cells: 2 * element.carets(),
            ratio: (f.cells > 0).then(|| f.word.len() as f64 / f.cells as f64),
            bound_holds: f.bound_holds,
        })
    }

    /// Samples random elements of the closure as products of `Y` generators
    /// and records the length of their factorization against their size.
    pub fn distortion_probe(&self, spec: &ProbeSpec) -> Result<ProbeReport> {
        let samples = (0..spec.samples)
            .into_par_iter()
            .map(|i| self.probe_one(spec, i))
            .collect::<Result<Vec<_>>>()?;
        let max_ratio = samples.iter().filter_map(|s| s.ratio).fold(0.0, f64::max);
        let violations = samples.iter().filter(|s| !s.bound_holds).count();
        Ok(ProbeReport {
            schema: 1,
            spec: *spec,
            generators: self.y.len(),
            max_ratio,
            violations,
            samples,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completion::SemiCompletion;
    use crate::stallings::Core;

    #[test]
    fn deterministic_and_bounded() {
        let c = Core::build(&[TreeDiagram::x0()]).unwrap();
        let cl = Closure::new(&SemiCompletion::new(&c).unwrap(), None).unwrap();
        let spec = ProbeSpec {
            samples: 50,
            max_length: 6,
            seed: 7,
        };
        let a = cl.distortion_probe(&spec).unwrap();
        let b = cl.distortion_probe(&spec).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
        assert_eq!(a.violations, 0);
        assert!(a.max_ratio <= 3.0);
    }

    #[test]
    fn identity_gives_zeros() {
        let c = Core::build(&[TreeDiagram::identity()]).unwrap();
        let cl = Closure::new(&SemiCompletion::new(&c).unwrap(), None).unwrap();
        let r = cl.distortion_probe(&ProbeSpec::default()).unwrap();
        assert!(r
            .samples
            .iter()
            .all(|s| s.cells == 0 && s.factor_length == 0));
        assert_eq!(r.max_ratio, 0.0);
    }
}
