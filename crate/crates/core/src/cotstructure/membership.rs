use super::generators::GeneratorSet;
use super::report::{HomWitness, Origin};
use crate::complexes::{hom_space, shift_window, Complex};
use crate::error::{Error, Result};
use crate::exact_linear::Field;

/// Result of a membership test; a failed test carries a nonzero class.
#[derive(Debug, Clone)]
pub struct Membership<F> {
    pub holds: bool,
    pub witness: Option<HomWitness<F>>,
}

impl<F: Field> Membership<F> {
    fn from_witness(witness: Option<HomWitness<F>>) -> Self {
        Membership {
            holds: witness.is_none(),
            witness,
        }
    }
}

/// First nonzero `Hom(S, Σ^m X)` with `keep(m)`, scanning generators in order
/// and shifts upward through the support window.
fn first_nonzero<F: Field>(
    x: &Complex<F>,
    gens: &GeneratorSet<F>,
    keep: impl Fn(i32) -> bool,
) -> Result<Option<HomWitness<F>>> {
    if x.algebra() != gens.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    for (j, s) in gens.generators().iter().enumerate() {
        let Some((lo, hi)) = shift_window(s, x) else {
            continue;
        };
        for m in (lo..=hi).filter(|&m| keep(m)) {
            let h = hom_space(s, x, m)?;
            if let Some(rep) = h.representatives.first() {
                return Ok(Some(HomWitness::new(Origin::Generator(j), rep.clone())));
            }
        }
    }
    Ok(None)
}

/// `X ∈ B`: `Hom(S, Σ^n X) = 0` for all generators and all `n > 0`.
pub fn in_b<F: Field>(x: &Complex<F>, gens: &GeneratorSet<F>) -> Result<Membership<F>> {
    first_nonzero(x, gens, |m| m > 0).map(Membership::from_witness)
}

/// `X ∈ Ā`: `Hom(S, Σ^i X) = 0` for all generators and all `i < 0`.
pub fn in_a_bar<F: Field>(x: &Complex<F>, gens: &GeneratorSet<F>) -> Result<Membership<F>> {
    first_nonzero(x, gens, |m| m < 0).map(Membership::from_witness)
}

/// Necessary condition for `X ∈ Σ(⊥B)`: `Hom(Σ^{-1} X, B') = 0` for every
/// sample `B'`. Every sample must itself lie in `B`.
pub fn in_a_sampled<F: Field>(
    x: &Complex<F>,
    gens: &GeneratorSet<F>,
    samples: &[Complex<F>],
) -> Result<Membership<F>> {
    for (i, b) in samples.iter().enumerate() {
        if !in_b(b, gens)?.holds {
            return Err(Error::Precondition(format!("sample {i} not in B")));
        }
    }
    let desuspended = x.suspend(-1);
    for (i, b) in samples.iter().enumerate() {
        let h = hom_space(&desuspended, b, 0)?;
        if let Some(rep) = h.representatives.first() {
            return Ok(Membership::from_witness(Some(HomWitness::new(
                Origin::Sample(i),
                rep.clone(),
            ))));
        }
    }
    Ok(Membership::from_witness(None))
}
