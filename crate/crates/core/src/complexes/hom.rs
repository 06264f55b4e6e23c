//! Hom-spaces in the homotopy category.
//!
//! `Hom(X, Σ^s Y)` is computed as chain maps modulo null-homotopic maps.
//! Unknowns are the path coordinates of each block entry of each component,
//! so every linear system here is exact and finite.

use std::collections::BTreeMap;

use serde::Serialize;

use super::block::BlockMap;
use super::chain_map::ChainMap;
use super::complex::Complex;
use crate::algebra::PathAlgebra;
use crate::error::{Error, Result};
use crate::exact_linear::{quotient_dimension, Field, Matrix};

/// Coordinates on `Hom(⊕ P_cols, ⊕ P_rows)`: one per block entry and path.
#[derive(Clone, Debug)]
struct BlockCoords {
    rows: Vec<usize>,
    cols: Vec<usize>,
    starts: Vec<usize>,
    dim: usize,
}

impl BlockCoords {
    fn new(alg: &PathAlgebra, rows: &[usize], cols: &[usize]) -> Self {
        let mut starts = Vec::with_capacity(rows.len() * cols.len());
        let mut dim = 0;
        for &w in rows {
            for &v in cols {
                starts.push(dim);
                dim += alg.paths_between(v, w).len();
            }
        }
        BlockCoords {
            rows: rows.to_vec(),
            cols: cols.to_vec(),
            starts,
            dim,
        }
    }

    fn index(&self, alg: &PathAlgebra, r: usize, c: usize, path: usize) -> usize {
        self.starts[r * self.cols.len() + c] + alg.slot(path)
    }

    fn encode<F: Field>(&self, alg: &PathAlgebra, b: &BlockMap<F>, out: &mut [F]) {
        for r in 0..self.rows.len() {
            for c in 0..self.cols.len() {
                for (p, x) in b.get(r, c).terms() {
                    out[self.index(alg, r, c, p)] = x.clone();
                }
            }
        }
    }

    fn decode<F: Field>(&self, alg: &PathAlgebra, v: &[F]) -> BlockMap<F> {
        let mut b = BlockMap::zero(&self.rows, &self.cols);
        for (r, &w) in self.rows.iter().enumerate() {
            for (c, &u) in self.cols.iter().enumerate() {
                let start = self.starts[r * self.cols.len() + c];
                let mut x = crate::algebra::AlgebraElement::zero();
                for (i, &p) in alg.paths_between(u, w).iter().enumerate() {
                    x.add_term(p, v[start + i].clone());
                }
                b.set(r, c, x);
            }
        }
        b
    }
}

/// The family `⊕_k Hom(X^k, Z^{k+offset})`.
#[derive(Clone, Debug)]
struct Layout {
    blocks: BTreeMap<i32, (usize, BlockCoords)>,
    dim: usize,
}

impl Layout {
    fn new<F: Field>(x: &Complex<F>, z: &Complex<F>, offset: i32) -> Self {
        let alg = x.algebra();
        let mut blocks = BTreeMap::new();
        let mut dim = 0;
        if let (Some((xlo, xhi)), Some((zlo, zhi))) = (x.support(), z.support()) {
            for k in xlo.max(zlo - offset)..=xhi.min(zhi - offset) {
                let coords = BlockCoords::new(alg, z.term(k + offset), x.term(k));
                if coords.dim > 0 {
                    let d = coords.dim;
                    blocks.insert(k, (dim, coords));
                    dim += d;
                }
            }
        }
        Layout { blocks, dim }
    }

    fn get(&self, k: i32) -> Option<&(usize, BlockCoords)> {
        self.blocks.get(&k)
    }

    fn encode<F: Field>(&self, alg: &PathAlgebra, comps: impl Fn(i32) -> BlockMap<F>) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim];
        for (&k, (off, coords)) in &self.blocks {
            coords.encode(alg, &comps(k), &mut v[*off..*off + coords.dim]);
        }
        v
    }

    fn decode<F: Field>(&self, alg: &PathAlgebra, v: &[F]) -> BTreeMap<i32, BlockMap<F>> {
        self.blocks
            .iter()
            .map(|(&k, (off, coords))| (k, coords.decode(alg, &v[*off..*off + coords.dim])))
            .collect()
    }
}

/// Adds the matrix of `φ ↦ sign · d ∘ φ` from block `src` to block `dst`.
#[allow(clippy::too_many_arguments)]
fn add_left_mul<F: Field>(
    m: &mut Matrix<F>,
    alg: &PathAlgebra,
    d: &BlockMap<F>,
    (src_off, src): (usize, &BlockCoords),
    (dst_off, dst): (usize, &BlockCoords),
    sign: &F,
) {
    debug_assert_eq!(d.cols(), src.rows.as_slice());
    debug_assert_eq!(d.rows(), dst.rows.as_slice());
    for (r, &w) in src.rows.iter().enumerate() {
        for (c, &u) in src.cols.iter().enumerate() {
            for &p in alg.paths_between(u, w) {
                let col = src_off + src.index(alg, r, c, p);
                for t in 0..dst.rows.len() {
                    for (q, a) in d.get(t, r).terms() {
                        let prod = alg.path_product(q, p).expect("composable paths");
                        let row = dst_off + dst.index(alg, t, c, prod);
                        m[(row, col)] = m[(row, col)].clone() + sign.clone() * a.clone();
                    }
                }
            }
        }
    }
}

/// Adds the matrix of `φ ↦ sign · φ ∘ d` from block `src` to block `dst`.
fn add_right_mul<F: Field>(
    m: &mut Matrix<F>,
    alg: &PathAlgebra,
    d: &BlockMap<F>,
    (src_off, src): (usize, &BlockCoords),
    (dst_off, dst): (usize, &BlockCoords),
    sign: &F,
) {
    debug_assert_eq!(d.rows(), src.cols.as_slice());
    debug_assert_eq!(d.cols(), dst.cols.as_slice());
    for (r, &w) in src.rows.iter().enumerate() {
        for (c, &u) in src.cols.iter().enumerate() {
            for &p in alg.paths_between(u, w) {
                let col = src_off + src.index(alg, r, c, p);
                for c2 in 0..dst.cols.len() {
                    for (q, a) in d.get(c, c2).terms() {
                        let prod = alg.path_product(p, q).expect("composable paths");
                        let row = dst_off + dst.index(alg, r, c2, prod);
                        m[(row, col)] = m[(row, col)].clone() + sign.clone() * a.clone();
                    }
                }
            }
        }
    }
}

/// Linear systems for degree-preserving maps `X → Z`.
struct HomSystem<'a, F> {
    x: &'a Complex<F>,
    z: &'a Complex<F>,
    maps: Layout,
    homotopies: Layout,
}

impl<'a, F: Field> HomSystem<'a, F> {
    fn new(x: &'a Complex<F>, z: &'a Complex<F>) -> Self {
        HomSystem {
            x,
            z,
            maps: Layout::new(x, z, 0),
            homotopies: Layout::new(x, z, -1),
        }
    }

    /// Matrix of `f ↦ (d_Z f^k − f^{k+1} d_X)_k`.
    fn constraint_matrix(&self) -> Matrix<F> {
        let alg = self.x.algebra();
        let equations = Layout::new(self.x, self.z, 1);
        let mut m = Matrix::zeros(equations.dim, self.maps.dim);
        let one = F::one();
        let minus = -F::one();
        for (&k, (eoff, eq)) in &equations.blocks {
            if let Some((off, coords)) = self.maps.get(k) {
                add_left_mul(
                    &mut m,
                    alg,
                    &self.z.diff(k),
                    (*off, coords),
                    (*eoff, eq),
                    &one,
                );
            }
            if let Some((off, coords)) = self.maps.get(k + 1) {
                add_right_mul(
                    &mut m,
                    alg,
                    &self.x.diff(k),
                    (*off, coords),
                    (*eoff, eq),
                    &minus,
                );
            }
        }
        m
    }

    /// Matrix of `h ↦ (d_Z h^k + h^{k+1} d_X)_k`.
    fn homotopy_matrix(&self) -> Matrix<F> {
        let alg = self.x.algebra();
        let mut m = Matrix::zeros(self.maps.dim, self.homotopies.dim);
        let one = F::one();
        for (&k, (hoff, hc)) in &self.homotopies.blocks {
            if let Some((off, coords)) = self.maps.get(k) {
                add_left_mul(
                    &mut m,
                    alg,
                    &self.z.diff(k - 1),
                    (*hoff, hc),
                    (*off, coords),
                    &one,
                );
            }
            if let Some((off, coords)) = self.maps.get(k - 1) {
                add_right_mul(
                    &mut m,
                    alg,
                    &self.x.diff(k - 1),
                    (*hoff, hc),
                    (*off, coords),
                    &one,
                );
            }
        }
        m
    }
}

/// A basis of `Hom_T(X, Σ^shift Y)`: one representative chain map per class.
#[derive(Clone, Debug)]
pub struct HomSpaceBasis<F> {
    source: Complex<F>,
    target: Complex<F>,
    shift: i32,
    /// Dimension of the space of chain maps.
    pub ambient_dim: usize,
    /// Dimension of the null-homotopic maps.
    pub boundary_dim: usize,
    pub representatives: Vec<ChainMap<F>>,
    layout: Layout,
    /// `[homotopy image | representatives]` in map coordinates.
    solver: Matrix<F>,
    boundary_cols: usize,
}

impl<F: Field> HomSpaceBasis<F> {
    pub fn dimension(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_zero(&self) -> bool {
        self.representatives.is_empty()
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

    /// Coordinates of the class of `f` in the representative basis.
    pub fn coordinates(&self, f: &ChainMap<F>) -> Result<Vec<F>> {
        if f.source() != &self.source || f.target() != &self.target || f.shift() != self.shift {
            return Err(Error::Precondition(
                "chain map does not belong to this Hom-space".into(),
            ));
        }
        let v = self
            .layout
            .encode(self.source.algebra(), |k| f.component(k).into_owned());
        if self.layout.dim == 0 {
            return Ok(Vec::new());
        }
        let sol = self
            .solver
            .solve(&v)?
            .ok_or_else(|| Error::Precondition("not a chain map".into()))?;
        Ok(sol[self.boundary_cols..].to_vec())
    }
}

/// `Hom_T(X, Σ^shift Y)` as chain maps modulo null-homotopic maps.
pub fn hom_space<F: Field>(x: &Complex<F>, y: &Complex<F>, shift: i32) -> Result<HomSpaceBasis<F>> {
    if !x.same_algebra(y) {
        return Err(Error::AlgebraMismatch);
    }
    let alg = x.algebra();
    let z = y.suspend(shift);
    let sys = HomSystem::new(x, &z);
    let kernel = sys.constraint_matrix().kernel_basis();
    let boundary = sys.homotopy_matrix();
    let ambient_dim = kernel.cols();
    let quotient = quotient_dimension(&boundary, &kernel)?;
    let boundary_dim = ambient_dim - quotient;

    // Representatives: kernel columns that are independent modulo the boundaries,
    // chosen greedily left to right.
    let stacked = boundary.hstack(&kernel)?;
    let pivots = stacked.rref().pivots;
    let nb = boundary.cols();
    let rep_cols: Vec<Vec<F>> = pivots
        .iter()
        .filter(|&&p| p >= nb)
        .map(|&p| kernel.column(p - nb))
        .collect();
    if rep_cols.len() != quotient {
        return Err(Error::InvariantViolated(format!(
            "Hom dimension {quotient} but {} representatives",
            rep_cols.len()
        )));
    }
    let representatives = rep_cols
        .iter()
        .map(|v| ChainMap::from_parts(x.clone(), y.clone(), shift, sys.maps.decode(alg, v)))
        .collect();
    let reps_matrix = Matrix::from_columns(sys.maps.dim, &rep_cols)?;
    let solver = boundary.hstack(&reps_matrix)?;
    Ok(HomSpaceBasis {
        source: x.clone(),
        target: y.clone(),
        shift,
        ambient_dim,
        boundary_dim,
        representatives,
        layout: sys.maps,
        solver,
        boundary_cols: nb,
    })
}

/// A homotopy `h^k: X^k → Z^{k−1}` for maps `X → Z`.
#[derive(Clone, Debug)]
pub struct Homotopy<F> {
    source: Complex<F>,
    target: Complex<F>,
    components: BTreeMap<i32, BlockMap<F>>,
}

impl<F: Field> Homotopy<F> {
    pub fn component(&self, k: i32) -> BlockMap<F> {
        self.components
            .get(&k)
            .cloned()
            .unwrap_or_else(|| BlockMap::zero(self.target.term(k - 1), self.source.term(k)))
    }

    /// `d_Z h + h d_X` as a degree-preserving map `X → Z`.
    pub fn boundary(&self) -> ChainMap<F> {
        let alg = self.source.algebra();
        let mut comps = BTreeMap::new();
        if let Some((lo, hi)) = self.source.support() {
            for k in lo..=hi {
                let a = self.target.diff(k - 1).compose(alg, &self.component(k));
                let b = self.component(k + 1).compose(alg, &self.source.diff(k));
                comps.insert(k, a.add(&b));
            }
        }
        ChainMap::from_parts(self.source.clone(), self.target.clone(), 0, comps)
    }
}

/// A homotopy witnessing `f ≃ 0`, or `None` when `f` is not null-homotopic.
/// The returned witness has been re-verified against `f`.
pub fn is_null_homotopic<F: Field>(f: &ChainMap<F>) -> Option<Homotopy<F>> {
    let g = f.into_suspended_target();
    let (x, z) = (g.source(), g.target());
    let alg = x.algebra();
    let sys = HomSystem::new(x, z);
    let v = sys.maps.encode(alg, |k| g.component(k).into_owned());
    let h = if sys.maps.dim == 0 {
        vec![F::zero(); sys.homotopies.dim]
    } else {
        sys.homotopy_matrix().solve(&v).ok()??
    };
    let witness = Homotopy {
        source: x.clone(),
        target: z.clone(),
        components: sys.homotopies.decode(alg, &h),
    };
    (witness.boundary() == g).then_some(witness)
}

/// Zero objects of the homotopy category: the identity is null-homotopic.
pub fn is_contractible<F: Field>(x: &Complex<F>) -> bool {
    is_null_homotopic(&ChainMap::identity(x)).is_some()
}

/// The closed range of shifts `s` for which `Hom(X, Σ^s Y)` can be nonzero,
/// i.e. where the degree supports of `X` and `Σ^s Y` overlap.
pub fn shift_window<F: Field>(x: &Complex<F>, y: &Complex<F>) -> Option<(i32, i32)> {
    let (a, b) = x.support()?;
    let (c, d) = y.support()?;
    Some((c - b, d - a))
}

/// Rank data of a linear map between Hom-spaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InducedMap {
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
}

impl InducedMap {
    pub fn is_injective(&self) -> bool {
        self.rank == self.source_dim
    }

    pub fn is_surjective(&self) -> bool {
        self.rank == self.target_dim
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

fn induced_rank<F: Field>(
    source: &HomSpaceBasis<F>,
    target: &HomSpaceBasis<F>,
    apply: impl Fn(&ChainMap<F>) -> ChainMap<F>,
) -> Result<InducedMap> {
    let cols = source
        .representatives
        .iter()
        .map(|phi| target.coordinates(&apply(phi)))
        .collect::<Result<Vec<_>>>()?;
    let rank = if cols.is_empty() || target.dimension() == 0 {
        0
    } else {
        Matrix::from_columns(target.dimension(), &cols)?.rank()
    };
    Ok(InducedMap {
        source_dim: source.dimension(),
        target_dim: target.dimension(),
        rank,
    })
}

/// `Hom(g, Σ^s W): Hom(B, Σ^s W) → Hom(X, Σ^s W)` for `g: X → B`.
pub fn precompose<F: Field>(g: &ChainMap<F>, w: &Complex<F>, s: i32) -> Result<InducedMap> {
    if g.shift() != 0 {
        return Err(Error::Precondition(
            "precompose expects a degree-0 map".into(),
        ));
    }
    let source = hom_space(g.target(), w, s)?;
    let target = hom_space(g.source(), w, s)?;
    induced_rank(&source, &target, |phi| g.then(phi))
}

/// `Hom(S, Σ^s g): Hom(S, Σ^s X) → Hom(S, Σ^s B)` for `g: X → B`.
pub fn postcompose<F: Field>(g: &ChainMap<F>, s_obj: &Complex<F>, s: i32) -> Result<InducedMap> {
    if g.shift() != 0 {
        return Err(Error::Precondition(
            "postcompose expects a degree-0 map".into(),
        ));
    }
    let source = hom_space(s_obj, g.source(), s)?;
    let target = hom_space(s_obj, g.target(), s)?;
    induced_rank(&source, &target, |psi| psi.then(g))
}

/// A basis of the maps `D: ⊕ P_{prev.rows} → ⊕ P_rows` with `D ∘ prev = 0`.
pub(crate) fn annihilating_maps<F: Field>(
    alg: &PathAlgebra,
    prev: &BlockMap<F>,
    rows: &[usize],
) -> Vec<BlockMap<F>> {
    let src = BlockCoords::new(alg, rows, prev.rows());
    let dst = BlockCoords::new(alg, rows, prev.cols());
    let mut m = Matrix::zeros(dst.dim, src.dim);
    add_right_mul(&mut m, alg, prev, (0, &src), (0, &dst), &F::one());
    m.kernel_basis()
        .columns()
        .iter()
        .map(|v| src.decode(alg, v))
        .collect()
}
