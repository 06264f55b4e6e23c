use std::collections::BTreeMap;

use serde::Serialize;

use super::approximations::ses_slots;
use super::generators::GeneratorSet;
use super::membership::{in_a_bar, in_b, Membership};
use super::SesSlot;
use crate::complexes::{
    cone, direct_sum, hom_space, postcompose, ChainMap, Complex, ComplexSummary, Triangle,
};
use crate::error::{Error, Result};
use crate::exact_linear::Field;

/// One copy of `Σ^suspension S_generator` inside `R_n`, attached along the
/// `class`-th basis element of `Hom(Σ^suspension S, B_n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RSummand {
    pub generator: usize,
    pub suspension: i32,
    pub class: usize,
}

/// A right `Add(R)`-approximation `f: R_0 → X`.
#[derive(Debug, Clone)]
pub struct RApproximation<F> {
    pub r: Complex<F>,
    pub f: ChainMap<F>,
    pub summands: Vec<RSummand>,
}

/// Suspensions `i < 0` for which `Hom(Σ^i S, X)` can be nonzero, from `−1` down.
fn negative_suspensions<F: Field>(s: &Complex<F>, x: &Complex<F>) -> Vec<i32> {
    match (s.support(), x.support()) {
        (Some((slo, shi)), Some((xlo, xhi))) => {
            let top = (-1).min(shi - xlo);
            let bottom = slo - xhi;
            (bottom..=top).rev().collect()
        }
        _ => Vec::new(),
    }
}

/// `R_0 = ⊕ (Σ^i S)^{dim Hom(Σ^i S, X)}` over generators and `i < 0`, with
/// `f_0` assembled from one representative per basis class. Surjectivity of
/// `Hom(Σ^i S, f_0)` is checked before returning.
pub fn r_approximation<F: Field>(
    x: &Complex<F>,
    gens: &GeneratorSet<F>,
) -> Result<RApproximation<F>> {
    if x.algebra() != gens.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    let mut pieces = Vec::new();
    let mut reps = Vec::new();
    let mut summands = Vec::new();
    for (j, s) in gens.generators().iter().enumerate() {
        for i in negative_suspensions(s, x) {
            let si = s.suspend(i);
            let h = hom_space(&si, x, 0)?;
            for (class, rep) in h.representatives.iter().enumerate() {
                pieces.push(si.clone());
                reps.push(rep.clone());
                summands.push(RSummand {
                    generator: j,
                    suspension: i,
                    class,
                });
            }
        }
    }
    let sum = direct_sum(x.algebra(), &pieces)?;
    let mut f = ChainMap::zero(&sum.sum, x, 0);
    for (p, rep) in sum.projections.iter().zip(&reps) {
        f = f.add(&p.then(rep));
    }
    for s in gens.generators() {
        for i in negative_suspensions(s, x) {
            let induced = postcompose(&f, &s.suspend(i), 0)?;
            if !induced.is_surjective() {
                return Err(Error::InvariantViolated(format!(
                    "approximation not surjective on Hom(Σ^{i} S, X): rank {} of {}",
                    induced.rank, induced.target_dim
                )));
            }
        }
    }
    Ok(RApproximation {
        r: sum.sum,
        f,
        summands,
    })
}

/// `B_n → B_{n+1}` with `B_{n+1} = cone(f_n: R_n → B_n)`.
#[derive(Debug, Clone)]
pub struct TowerStep<F> {
    pub summands: Vec<RSummand>,
    /// `R_n --f_n--> B_n --g_n--> B_{n+1} --h_n--> ΣR_n`.
    pub triangle: Triangle<F>,
    pub ses: Vec<SesSlot>,
}

impl<F: Field> TowerStep<F> {
    pub fn r(&self) -> &Complex<F> {
        self.triangle.first()
    }

    pub fn b(&self) -> &Complex<F> {
        self.triangle.second()
    }

    pub fn b_next(&self) -> &Complex<F> {
        self.triangle.third()
    }

    pub fn f(&self) -> &ChainMap<F> {
        &self.triangle.u
    }

    pub fn g(&self) -> &ChainMap<F> {
        &self.triangle.v
    }

    pub fn h(&self) -> &ChainMap<F> {
        &self.triangle.w
    }
}

/// Per-step data kept for reports and for diagnosing non-termination.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub r_summands: usize,
    pub r: ComplexSummary,
    pub b: ComplexSummary,
    /// Per generator, nonzero `dim Hom(S, Σ^m B_n)` for `m > 0`.
    pub positive_hom_dims: Vec<BTreeMap<i32, usize>>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TowerTrace {
    pub max_iter: usize,
    pub terminated: bool,
    pub steps: Vec<TraceStep>,
}

/// A terminated tower `X = B_0 → B_1 → … → B_N` with `R_N = 0`.
#[derive(Debug, Clone)]
pub struct Tower<F> {
    input: Complex<F>,
    steps: Vec<TowerStep<F>>,
    trace: TowerTrace,
}

impl<F: Field> Tower<F> {
    pub fn input(&self) -> &Complex<F> {
        &self.input
    }

    pub fn steps(&self) -> &[TowerStep<F>] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn terminated(&self) -> bool {
        self.trace.terminated
    }

    pub fn trace(&self) -> &TowerTrace {
        &self.trace
    }

    /// The last object, which is the homotopy colimit of the stabilized tower.
    pub fn last(&self) -> &Complex<F> {
        self.steps.last().map_or(&self.input, |s| s.b_next())
    }

    /// `g_X = g_{N−1} ∘ … ∘ g_0`.
    pub fn g_x(&self) -> ChainMap<F> {
        self.steps
            .iter()
            .fold(ChainMap::identity(&self.input), |acc, s| acc.then(s.g()))
    }
}

/// `(top − bottom) + 2`, where `top` is the highest degree of `X` and
/// `bottom` the lowest degree of `X` and of the generators.
pub fn default_max_iter<F: Field>(x: &Complex<F>, gens: &GeneratorSet<F>) -> usize {
    let Some((lo, hi)) = x.support() else {
        return 2;
    };
    let bottom = gens
        .generators()
        .iter()
        .filter_map(|s| s.support().map(|(slo, _)| slo))
        .fold(lo, i32::min);
    (hi - bottom) as usize + 2
}

/// Iterates `B_{n+1} = cone(f_n)` until `R_n = 0`. Each step's short exact
/// sequence identity is checked as it is built.
pub fn build_tower<F: Field>(
    x: &Complex<F>,
    gens: &GeneratorSet<F>,
    max_iter: usize,
) -> Result<Tower<F>> {
    if max_iter == 0 {
        return Err(Error::Precondition("max_iter must be at least 1".into()));
    }
    let mut trace = TowerTrace {
        max_iter,
        terminated: false,
        steps: Vec::new(),
    };
    let mut steps = Vec::new();
    let mut b = x.clone();
    loop {
        let approx = r_approximation(&b, gens)?;
        let mut positive = vec![BTreeMap::new(); gens.len()];
        for s in &approx.summands {
            *positive[s.generator].entry(-s.suspension).or_insert(0) += 1;
        }
        trace.steps.push(TraceStep {
            r_summands: approx.summands.len(),
            r: approx.r.summary(),
            b: b.summary(),
            positive_hom_dims: positive,
        });
        if approx.r.is_empty() {
            trace.terminated = true;
            return Ok(Tower {
                input: x.clone(),
                steps,
                trace,
            });
        }
        if steps.len() == max_iter {
            return Err(Error::NonTerminating { max_iter, trace });
        }
        let triangle = cone(&approx.f)?;
        let ses = ses_slots(&triangle, gens)?;
        if let Some(bad) = ses.iter().find(|s| !s.holds) {
            return Err(Error::InvariantViolated(format!(
                "exact sequence identity fails at step {}: {bad:?}",
                steps.len()
            )));
        }
        b = triangle.third().clone();
        steps.push(TowerStep {
            summands: approx.summands,
            triangle,
            ses,
        });
    }
}

/// The left `B`-approximation `g_X: X → B` as the end of a terminated tower.
pub fn b_approximation<F: Field>(
    x: &Complex<F>,
    gens: &GeneratorSet<F>,
    max_iter: usize,
) -> Result<(Complex<F>, ChainMap<F>)> {
    let tower = build_tower(x, gens, max_iter)?;
    Ok((tower.last().clone(), tower.g_x()))
}

/// The triangle `A → X → B → ΣA` with `A = Σ^{-1} cone(g_X)`.
#[derive(Debug, Clone)]
pub struct Decomposition<F> {
    pub input: Complex<F>,
    pub a_part: Complex<F>,
    pub b_part: Complex<F>,
    /// `A --u--> X --g_X--> B --w--> ΣA`.
    pub triangle: Triangle<F>,
    pub g_x: ChainMap<F>,
    pub tower: Tower<F>,
    /// Exact `Ā`-membership of the `A` part.
    pub a_bar: Membership<F>,
}

pub fn decompose<F: Field>(
    x: &Complex<F>,
    gens: &GeneratorSet<F>,
    max_iter: usize,
) -> Result<Decomposition<F>> {
    let tower = build_tower(x, gens, max_iter)?;
    let b_part = tower.last().clone();
    let g_x = tower.g_x();
    let c = cone(&g_x)?;
    let u = c.w.into_desuspended_source();
    let a_part = u.source().clone();
    let w = c.v.reinterpret(b_part.clone(), a_part.clone(), 1);
    let b_membership = in_b(&b_part, gens)?;
    if !b_membership.holds {
        return Err(Error::InvariantViolated(
            "B part of the decomposition is not in B".into(),
        ));
    }
    let a_bar = in_a_bar(&a_part, gens)?;
    Ok(Decomposition {
        input: x.clone(),
        a_part,
        b_part,
        triangle: Triangle {
            u,
            v: g_x.clone(),
            w,
        },
        g_x,
        tower,
        a_bar,
    })
}

/// `B` parts of those candidates whose towers terminate within their default
/// bound, in input order. Every returned object lies in `B`.
pub fn b_samples<F: Field>(
    candidates: &[Complex<F>],
    gens: &GeneratorSet<F>,
) -> Result<Vec<Complex<F>>> {
    let mut out = Vec::new();
    for x in candidates {
        match b_approximation(x, gens, default_max_iter(x, gens)) {
            Ok((b, _)) => out.push(b),
            Err(Error::NonTerminating { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}
