//! Seeded pseudo-random bounded complexes.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::PathAlgebra;
use crate::complexes::{annihilating_maps, BlockMap, Complex};
use crate::exact_linear::Field;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomParams {
    /// Largest degree span; degrees lie in a window of this width around 0.
    pub degree_span: usize,
    /// Largest number of summands per degree.
    pub max_rank: usize,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams {
            degree_span: 7,
            max_rank: 3,
        }
    }
}

fn random_scalar<F: Field, R: Rng>(rng: &mut R) -> F {
    match F::characteristic() {
        0 => F::from_i64(rng.gen_range(-3..=3)),
        p => F::from_i64(rng.gen_range(0..p as i64)),
    }
}

/// A complex whose span is uniform in `1..=degree_span`, with nonzero end
/// terms. Each differential is a sparse random combination of a basis of the
/// maps killed by composing with the previous differential, so `d∘d = 0`
/// holds by construction.
pub fn random_complex<F: Field, R: Rng>(
    algebra: &Arc<PathAlgebra>,
    params: &RandomParams,
    rng: &mut R,
) -> Complex<F> {
    assert!(
        params.degree_span >= 1 && params.max_rank >= 1,
        "parameters must be positive"
    );
    let width = params.degree_span as i32;
    let span = rng.gen_range(1..=width);
    let low_edge = -(width / 2);
    let lo = rng.gen_range(low_edge..=low_edge + width - span);
    let n = algebra.vertex_count();
    let terms: Vec<Vec<usize>> = (0..span)
        .map(|k| {
            let min = if k == 0 || k == span - 1 { 1 } else { 0 };
            let rank = rng.gen_range(min..=params.max_rank);
            (0..rank).map(|_| rng.gen_range(0..n)).collect()
        })
        .collect();
    let mut diffs: Vec<BlockMap<F>> = Vec::new();
    for k in 0..terms.len().saturating_sub(1) {
        let prev = match diffs.last() {
            Some(d) => d.clone(),
            None => BlockMap::zero(&terms[k], &[]),
        };
        let mut d = BlockMap::zero(&terms[k + 1], &terms[k]);
        for basis in annihilating_maps(algebra, &prev, &terms[k + 1]) {
            if rng.gen_bool(0.5) {
                continue;
            }
            let c: F = random_scalar(rng);
            d = d.add(&basis.scale(&c));
        }
        diffs.push(d);
    }
    Complex::from_parts(algebra.clone(), lo, terms, diffs)
}

/// `count` complexes from a ChaCha8 stream seeded with `seed`.
pub fn random_corpus<F: Field>(
    algebra: &Arc<PathAlgebra>,
    params: &RandomParams,
    seed: u64,
    count: usize,
) -> Vec<Complex<F>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_complex(algebra, params, &mut rng))
        .collect()
}
