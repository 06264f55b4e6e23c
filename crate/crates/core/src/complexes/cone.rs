use std::collections::BTreeMap;
use std::sync::Arc;

use super::block::BlockMap;
use super::chain_map::ChainMap;
use super::complex::Complex;
use super::hom::is_null_homotopic;
use crate::algebra::PathAlgebra;
use crate::error::{Error, Result};
use crate::exact_linear::Field;

/// `U --u--> V --v--> W --w--> ΣU`, with `w` stored as a shift-1 map `W → U`.
#[derive(Clone, Debug)]
pub struct Triangle<F> {
    pub u: ChainMap<F>,
    pub v: ChainMap<F>,
    pub w: ChainMap<F>,
}

impl<F: Field> Triangle<F> {
    pub fn first(&self) -> &Complex<F> {
        self.u.source()
    }

    pub fn second(&self) -> &Complex<F> {
        self.v.source()
    }

    pub fn third(&self) -> &Complex<F> {
        self.w.source()
    }

    /// Names of the failed conditions; empty when the triangle is sound.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.u.target() != self.v.source()
            || self.v.target() != self.w.source()
            || self.w.target() != self.u.source()
            || self.u.shift() != 0
            || self.v.shift() != 0
            || self.w.shift() != 1
        {
            out.push("objects and shifts do not line up");
            return out;
        }
        for (msg, f) in [
            ("u is not a chain map", &self.u),
            ("v is not a chain map", &self.v),
            ("w is not a chain map", &self.w),
        ] {
            if !f.is_chain_map() {
                out.push(msg);
            }
        }
        if !out.is_empty() {
            return out;
        }
        if is_null_homotopic(&self.u.then(&self.v)).is_none() {
            out.push("v∘u is not null-homotopic");
        }
        if is_null_homotopic(&self.v.then(&self.w)).is_none() {
            out.push("w∘v is not null-homotopic");
        }
        if is_null_homotopic(&self.w.then(&self.u)).is_none() {
            out.push("Σu∘w is not null-homotopic");
        }
        out
    }

    pub fn is_sound(&self) -> bool {
        self.failures().is_empty()
    }
}

/// The mapping cone of a degree-preserving `f: U → V`:
/// `W^n = V^n ⊕ U^{n+1}` with differential `[[d_V, f], [0, −d_U]]`.
pub fn cone<F: Field>(f: &ChainMap<F>) -> Result<Triangle<F>> {
    if f.shift() != 0 {
        return Err(Error::Precondition("cone expects a map of shift 0".into()));
    }
    let (u, v) = (f.source(), f.target());
    let alg = u.algebra().clone();
    let bounds = [v.support(), u.support().map(|(lo, hi)| (lo - 1, hi - 1))];
    let Some((lo, hi)) = bounds
        .iter()
        .flatten()
        .copied()
        .reduce(|a, b| (a.0.min(b.0), a.1.max(b.1)))
    else {
        let w = Complex::zero(alg);
        return Ok(Triangle {
            u: f.clone(),
            v: ChainMap::zero(v, &w, 0),
            w: ChainMap::zero(&w, u, 1),
        });
    };
    let term = |n: i32| -> Vec<usize> { v.term(n).iter().chain(u.term(n + 1)).copied().collect() };
    let terms: Vec<Vec<usize>> = (lo..=hi).map(term).collect();
    let diffs = (lo..hi)
        .map(|n| {
            let zero_lower = BlockMap::zero(u.term(n + 2), v.term(n));
            BlockMap::from_quadrants(
                &v.diff(n),
                &f.component(n + 1),
                &zero_lower,
                &u.diff(n + 1).neg(),
            )
        })
        .collect();
    let w = Complex::from_parts(alg.clone(), lo, terms, diffs);

    let mut incl = BTreeMap::new();
    let mut proj = BTreeMap::new();
    for n in lo..=hi {
        let (nv, nu) = (v.term(n).len(), u.term(n + 1).len());
        let whole = injection_block(&alg, w.term(n), 0..nv);
        if nv > 0 {
            incl.insert(n, whole);
        }
        if nu > 0 {
            proj.insert(n, projection_block(&alg, w.term(n), nv..nv + nu));
        }
    }
    Ok(Triangle {
        u: f.clone(),
        v: ChainMap::from_parts(v.clone(), w.clone(), 0, incl),
        w: ChainMap::from_parts(w, u.clone(), 1, proj),
    })
}

/// `⊕ P_{range} → ⊕ P_{all}` placing the identity on the given positions.
fn injection_block<F: Field>(
    alg: &PathAlgebra,
    all: &[usize],
    range: std::ops::Range<usize>,
) -> BlockMap<F> {
    let mut b = BlockMap::zero(all, &all[range.clone()]);
    for (c, r) in range.enumerate() {
        b.set(
            r,
            c,
            crate::algebra::AlgebraElement::basis(alg.idempotent(all[r])),
        );
    }
    b
}

fn projection_block<F: Field>(
    alg: &PathAlgebra,
    all: &[usize],
    range: std::ops::Range<usize>,
) -> BlockMap<F> {
    let mut b = BlockMap::zero(&all[range.clone()], all);
    for (r, c) in range.enumerate() {
        b.set(
            r,
            c,
            crate::algebra::AlgebraElement::basis(alg.idempotent(all[c])),
        );
    }
    b
}

/// A finite direct sum with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum<F> {
    pub sum: Complex<F>,
    pub injections: Vec<ChainMap<F>>,
    pub projections: Vec<ChainMap<F>>,
}

/// Degree-wise concatenation of summand lists with block-diagonal differential.
pub fn direct_sum<F: Field>(algebra: &Arc<PathAlgebra>, xs: &[Complex<F>]) -> Result<DirectSum<F>> {
    if xs.iter().any(|x| x.algebra() != algebra) {
        return Err(Error::AlgebraMismatch);
    }
    let bounds = xs
        .iter()
        .filter_map(|x| x.support())
        .reduce(|a, b| (a.0.min(b.0), a.1.max(b.1)));
    let Some((lo, hi)) = bounds else {
        let zero = Complex::zero(algebra.clone());
        return Ok(DirectSum {
            injections: xs.iter().map(|x| ChainMap::zero(x, &zero, 0)).collect(),
            projections: xs.iter().map(|x| ChainMap::zero(&zero, x, 0)).collect(),
            sum: zero,
        });
    };
    let terms: Vec<Vec<usize>> = (lo..=hi)
        .map(|n| xs.iter().flat_map(|x| x.term(n).iter().copied()).collect())
        .collect();
    let diffs = (lo..hi)
        .map(|n| {
            let mut d = BlockMap::zero(&terms[(n + 1 - lo) as usize], &terms[(n - lo) as usize]);
            let (mut r0, mut c0) = (0, 0);
            for x in xs {
                let dx = x.diff(n);
                for r in 0..dx.rows().len() {
                    for c in 0..dx.cols().len() {
                        d.set(r0 + r, c0 + c, dx.get(r, c).clone());
                    }
                }
                r0 += dx.rows().len();
                c0 += dx.cols().len();
            }
            d
        })
        .collect();
    let sum = Complex::from_parts(algebra.clone(), lo, terms, diffs);
    let mut injections = Vec::with_capacity(xs.len());
    let mut projections = Vec::with_capacity(xs.len());
    let mut offsets: BTreeMap<i32, usize> = BTreeMap::new();
    for x in xs {
        let mut inj = BTreeMap::new();
        let mut proj = BTreeMap::new();
        for n in lo..=hi {
            let len = x.term(n).len();
            let off = offsets.entry(n).or_insert(0);
            if len > 0 {
                inj.insert(n, injection_block(algebra, sum.term(n), *off..*off + len));
                proj.insert(n, projection_block(algebra, sum.term(n), *off..*off + len));
            }
            *off += len;
        }
        injections.push(ChainMap::from_parts(x.clone(), sum.clone(), 0, inj));
        projections.push(ChainMap::from_parts(sum.clone(), x.clone(), 0, proj));
    }
    Ok(DirectSum {
        sum,
        injections,
        projections,
    })
}
