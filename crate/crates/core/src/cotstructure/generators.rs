use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::PathAlgebra;
use crate::complexes::{hom_space, is_contractible, shift_window, Complex};
use crate::error::{Error, Result};
use crate::exact_linear::Field;

/// A finite set `𝒮` of compact generators. The class `R = {Σ^i S | i < 0}` is
/// never materialized; it is enumerated on demand inside support windows.
#[derive(Clone, Debug)]
pub struct GeneratorSet<F> {
    generators: Vec<Complex<F>>,
    generating: bool,
}

impl<F: Field> GeneratorSet<F> {
    /// `generating` records the user's claim that the shifts of the
    /// generators detect every nonzero object.
    pub fn new(generators: Vec<Complex<F>>, generating: bool) -> Result<Self> {
        let Some(first) = generators.first() else {
            return Err(Error::Precondition("generator set is empty".into()));
        };
        for (i, s) in generators.iter().enumerate() {
            if !s.same_algebra(first) {
                return Err(Error::AlgebraMismatch);
            }
            if is_contractible(s) {
                return Err(Error::Precondition(format!(
                    "generator {i} is zero in the homotopy category"
                )));
            }
        }
        Ok(GeneratorSet {
            generators,
            generating,
        })
    }

    /// `{A}` for the regular module in degree 0, which always generates.
    pub fn algebra_stalk(algebra: Arc<PathAlgebra>) -> Self {
        GeneratorSet {
            generators: vec![Complex::algebra_stalk(algebra)],
            generating: true,
        }
    }

    pub fn generators(&self) -> &[Complex<F>] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn get(&self, i: usize) -> &Complex<F> {
        &self.generators[i]
    }

    pub fn is_generating(&self) -> bool {
        self.generating
    }

    pub fn with_generating(mut self, generating: bool) -> Self {
        self.generating = generating;
        self
    }

    pub fn algebra(&self) -> &Arc<PathAlgebra> {
        self.generators[0].algebra()
    }

    /// `max(hi) − min(lo) + 1` over all generators.
    pub fn span(&self) -> i32 {
        let lo = self
            .generators
            .iter()
            .filter_map(|s| s.support())
            .map(|s| s.0)
            .min();
        let hi = self
            .generators
            .iter()
            .filter_map(|s| s.support())
            .map(|s| s.1)
            .max();
        match (lo, hi) {
            (Some(lo), Some(hi)) => hi - lo + 1,
            _ => 0,
        }
    }

    /// Nonzero `dim Hom(S_j, Σ^m X)` for every generator, keyed by `m`.
    pub fn hom_profile(&self, x: &Complex<F>) -> Result<Vec<BTreeMap<i32, usize>>> {
        if x.algebra() != self.algebra() {
            return Err(Error::AlgebraMismatch);
        }
        self.generators
            .iter()
            .map(|s| {
                let mut dims = BTreeMap::new();
                if let Some((lo, hi)) = shift_window(s, x) {
                    for m in lo..=hi {
                        let d = hom_space(s, x, m)?.dimension();
                        if d > 0 {
                            dims.insert(m, d);
                        }
                    }
                }
                Ok(dims)
            })
            .collect()
    }
}
