use std::borrow::Cow;
use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use super::block::BlockMap;
use super::complex::{Complex, ComplexSummary};
use crate::error::{Error, Result};
use crate::exact_linear::Field;

/// A chain map `f: X → Σ^shift Y`, stored by its components
/// `f^k: X^k → Y^{k+shift}`. It commutes with the signed differential of
/// `Σ^shift Y`: `(−1)^shift · d_Y ∘ f^k = f^{k+1} ∘ d_X`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChainMap<F> {
    source: Complex<F>,
    target: Complex<F>,
    shift: i32,
    components: BTreeMap<i32, BlockMap<F>>,
}

impl<F: Field> ChainMap<F> {
    pub fn new(
        source: Complex<F>,
        target: Complex<F>,
        shift: i32,
        components: BTreeMap<i32, BlockMap<F>>,
    ) -> Result<Self> {
        if !source.same_algebra(&target) {
            return Err(Error::AlgebraMismatch);
        }
        for (&k, c) in &components {
            if c.cols() != source.term(k) || c.rows() != target.term(k + shift) {
                return Err(Error::InvalidChainMap {
                    degree: k,
                    message: "component shape does not match the terms".into(),
                });
            }
            if c.misplaced_entry(source.algebra()).is_some() {
                return Err(Error::InvalidChainMap {
                    degree: k,
                    message: "entry outside its idempotent-truncated space".into(),
                });
            }
        }
        let f = Self::from_parts(source, target, shift, components);
        if let Some(k) = f.first_noncommuting_degree() {
            return Err(Error::InvalidChainMap {
                degree: k,
                message: "does not commute with the differentials".into(),
            });
        }
        Ok(f)
    }

    pub(crate) fn from_parts(
        source: Complex<F>,
        target: Complex<F>,
        shift: i32,
        mut components: BTreeMap<i32, BlockMap<F>>,
    ) -> Self {
        components.retain(|_, c| !c.is_zero());
        ChainMap {
            source,
            target,
            shift,
            components,
        }
    }

    /// Stored (nonzero) components.
    pub fn components(&self) -> &BTreeMap<i32, BlockMap<F>> {
        &self.components
    }

    /// The same components read as a map into another presentation of the
    /// target, e.g. `B → Σ(Σ^{-1}C)` from `B → C`. Term lists must agree.
    pub(crate) fn reinterpret(
        &self,
        source: Complex<F>,
        target: Complex<F>,
        shift: i32,
    ) -> ChainMap<F> {
        for (&k, c) in &self.components {
            assert_eq!(c.cols(), source.term(k), "source terms differ");
            assert_eq!(c.rows(), target.term(k + shift), "target terms differ");
        }
        let f = Self::from_parts(source, target, shift, self.components.clone());
        debug_assert!(f.is_chain_map());
        f
    }

    pub fn zero(source: &Complex<F>, target: &Complex<F>, shift: i32) -> Self {
        Self::from_parts(source.clone(), target.clone(), shift, BTreeMap::new())
    }

    pub fn identity(x: &Complex<F>) -> Self {
        let mut comps = BTreeMap::new();
        if let Some((lo, hi)) = x.support() {
            for k in lo..=hi {
                comps.insert(k, BlockMap::identity(x.algebra(), x.term(k)));
            }
        }
        Self::from_parts(x.clone(), x.clone(), 0, comps)
    }

    pub fn source(&self) -> &Complex<F> {
        &self.source
    }

    pub fn target(&self) -> &Complex<F> {
        &self.target
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    /// `f^k: X^k → Y^{k+shift}`, zero when not stored.
    pub fn component(&self, k: i32) -> Cow<'_, BlockMap<F>> {
        match self.components.get(&k) {
            Some(c) => Cow::Borrowed(c),
            None => Cow::Owned(BlockMap::zero(
                self.target.term(k + self.shift),
                self.source.term(k),
            )),
        }
    }

    /// Literal zero data. Zero in the homotopy category is `is_null_homotopic`.
    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_chain_map(&self) -> bool {
        self.first_noncommuting_degree().is_none()
    }

    fn first_noncommuting_degree(&self) -> Option<i32> {
        let (lo, hi) = self.source.support()?;
        let alg = self.source.algebra();
        let sign = if self.shift % 2 == 0 {
            F::one()
        } else {
            -F::one()
        };
        (lo - 1..=hi).find(|&k| {
            let lhs = self
                .target
                .diff(k + self.shift)
                .compose(alg, &self.component(k))
                .scale(&sign);
            let rhs = self.component(k + 1).compose(alg, &self.source.diff(k));
            lhs != rhs
        })
    }

    /// For `self: X → Σ^a Y` and `g: Y → Σ^b Z`, the composite
    /// `Σ^a g ∘ self: X → Σ^{a+b} Z`.
    pub fn then(&self, g: &ChainMap<F>) -> ChainMap<F> {
        assert_eq!(&self.target, &g.source, "chain maps are not composable");
        let alg = self.source.algebra();
        let comps = self
            .components
            .iter()
            .map(|(&k, f)| (k, g.component(k + self.shift).compose(alg, f)))
            .collect();
        Self::from_parts(
            self.source.clone(),
            g.target.clone(),
            self.shift + g.shift,
            comps,
        )
    }

    fn zip_with(
        &self,
        other: &ChainMap<F>,
        op: impl Fn(&BlockMap<F>, &BlockMap<F>) -> BlockMap<F>,
    ) -> ChainMap<F> {
        assert_eq!(self.source, other.source);
        assert_eq!(self.target, other.target);
        assert_eq!(self.shift, other.shift);
        let keys: std::collections::BTreeSet<i32> = self
            .components
            .keys()
            .chain(other.components.keys())
            .copied()
            .collect();
        let comps = keys
            .into_iter()
            .map(|k| (k, op(&self.component(k), &other.component(k))))
            .collect();
        Self::from_parts(self.source.clone(), self.target.clone(), self.shift, comps)
    }

    pub fn add(&self, other: &ChainMap<F>) -> ChainMap<F> {
        self.zip_with(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &ChainMap<F>) -> ChainMap<F> {
        self.zip_with(other, |a, b| a.add(&b.neg()))
    }

    pub fn scale(&self, c: &F) -> ChainMap<F> {
        let comps = self
            .components
            .iter()
            .map(|(&k, b)| (k, b.scale(c)))
            .collect();
        Self::from_parts(self.source.clone(), self.target.clone(), self.shift, comps)
    }

    pub fn neg(&self) -> ChainMap<F> {
        self.scale(&-F::one())
    }

    /// `Σ^n f: Σ^n X → Σ^{shift} Σ^n Y`, with `(Σ^n f)^j = f^{j+n}`.
    pub fn suspend(&self, n: i32) -> ChainMap<F> {
        let comps = self
            .components
            .iter()
            .map(|(&k, b)| (k - n, b.clone()))
            .collect();
        Self::from_parts(
            self.source.suspend(n),
            self.target.suspend(n),
            self.shift,
            comps,
        )
    }

    /// The same data seen as a degree-preserving map `X → Σ^shift Y` into the
    /// suspended complex.
    pub fn into_suspended_target(&self) -> ChainMap<F> {
        Self::from_parts(
            self.source.clone(),
            self.target.suspend(self.shift),
            0,
            self.components.clone(),
        )
    }

    /// The same data seen as a degree-preserving map `Σ^{−shift} X → Y`.
    pub fn into_desuspended_source(&self) -> ChainMap<F> {
        let comps = self
            .components
            .iter()
            .map(|(&k, b)| (k + self.shift, b.clone()))
            .collect();
        Self::from_parts(
            self.source.suspend(-self.shift),
            self.target.clone(),
            0,
            comps,
        )
    }

    pub fn view(&self) -> ChainMapView {
        let alg = self.source.algebra();
        ChainMapView {
            shift: self.shift,
            source: self.source.summary(),
            target: self.target.summary(),
            components: self
                .components
                .iter()
                .map(|(&k, b)| (k, b.format_rows(alg)))
                .collect(),
        }
    }
}

/// Printable form of a chain map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainMapView {
    pub shift: i32,
    pub source: ComplexSummary,
    pub target: ComplexSummary,
    pub components: BTreeMap<i32, Vec<Vec<String>>>,
}

impl<F: Field> Serialize for ChainMap<F> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.view().serialize(serializer)
    }
}
