use num_bigint::{BigUint, RandBigInt};
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::EmbeddedGraph;

use super::{count_colorings, enumerate_multiwebs, Multiweb};

/// Sum of coloring counts over all `n`-multiwebs of `g`.
pub fn partition_function(g: &EmbeddedGraph, n: usize) -> BigUint {
    let all: Vec<Multiweb> = enumerate_multiwebs(g, n).collect();
    all.par_iter()
        .map(|m| count_colorings(g, m).expect("enumerated multiwebs are valid"))
        .reduce(BigUint::zero, |a, b| a + b)
}

/// Exact sampler: every multiweb with its cumulative weight.
pub struct MultiwebSampler {
    webs: Vec<Multiweb>,
    weights: Vec<BigUint>,
    cumulative: Vec<BigUint>,
}

impl MultiwebSampler {
    pub fn new(g: &EmbeddedGraph, n: usize) -> Result<Self> {
        let webs: Vec<Multiweb> = enumerate_multiwebs(g, n).collect();
        let weights: Vec<BigUint> = webs
            .par_iter()
            .map(|m| count_colorings(g, m).expect("enumerated multiwebs are valid"))
            .collect();
        let mut cumulative = Vec::with_capacity(weights.len());
        let mut acc = BigUint::zero();
        for w in &weights {
            acc += w;
            cumulative.push(acc.clone());
        }
        if acc.is_zero() {
            return Err(Error::Multiweb("partition function is zero".into()));
        }
        Ok(MultiwebSampler {
            webs,
            weights,
            cumulative,
        })
    }

    pub fn total(&self) -> &BigUint {
        self.cumulative.last().expect("nonempty")
    }

    /// Multiwebs paired with their weights, in enumeration order.
    pub fn support(&self) -> impl Iterator<Item = (&Multiweb, &BigUint)> {
        self.webs.iter().zip(&self.weights)
    }

    pub fn sample(&self, rng: &mut impl rand::Rng) -> &Multiweb {
        let r = rng.gen_biguint_below(self.total());
        let i = self.cumulative.partition_point(|c| c <= &r);
        &self.webs[i]
    }
}

/// One multiweb drawn with probability proportional to its coloring count.
pub fn sample_multiweb(g: &EmbeddedGraph, n: usize, seed: u64) -> Result<Multiweb> {
    let s = MultiwebSampler::new(g, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(s.sample(&mut rng).clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, grid, parallel_edge, theta};

    #[test]
    fn small_partition_functions() {
        assert_eq!(partition_function(&cycle(2), 3), BigUint::from(8u32));
        assert_eq!(partition_function(&theta(3), 3), BigUint::from(27u32));
        let g = grid(2, 3);
        let zd = g.count_matchings();
        for n in 1..=3 {
            assert_eq!(partition_function(&g, n), BigUint::from(zd).pow(n as u32));
        }
    }

    #[test]
    fn deterministic_and_exact_frequencies() {
        let g = cycle(2);
        assert_eq!(
            sample_multiweb(&g, 3, 7).unwrap(),
            sample_multiweb(&g, 3, 7).unwrap()
        );
        let s = MultiwebSampler::new(&g, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut counts = [0usize; 4];
        let trials = 8000;
        for _ in 0..trials {
            counts[s.sample(&mut rng).mult(0)] += 1;
        }
        for (k, &c) in counts.iter().enumerate() {
            let p = [1.0, 3.0, 3.0, 1.0][k] / 8.0;
            let sd = (trials as f64 * p * (1.0 - p)).sqrt();
            assert!((c as f64 - trials as f64 * p).abs() < 5.0 * sd);
        }
    }

    #[test]
    fn single_edge_is_certain() {
        let g = parallel_edge();
        assert_eq!(sample_multiweb(&g, 3, 0).unwrap().mult(0), 3);
    }
}
