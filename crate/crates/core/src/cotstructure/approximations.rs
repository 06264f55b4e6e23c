//! Runtime checks of the approximation and isomorphism statements behind the
//! tower construction. All checks compare exact dimensions and ranks.

use serde::Serialize;

use super::axioms::check_setup2;
use super::generators::GeneratorSet;
use super::membership::in_b;
use super::report::{Level, Report, Verdict};
use super::tower::{Decomposition, TowerStep};
use crate::complexes::{hom_space, postcompose, precompose, shift_window, Complex, Triangle};
use crate::error::{Error, Result};
use crate::exact_linear::Field;

/// One slot of `0 → Hom(S, Σ^t B_{n+1}) → Hom(S, Σ^{t+1} R_n) → Hom(S, Σ^{t+1} B_n) → 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SesSlot {
    pub generator: usize,
    pub shift: i32,
    pub r_dim: usize,
    pub b_next_dim: usize,
    pub b_dim: usize,
    pub holds: bool,
}

fn upper_shift<F: Field>(s: &Complex<F>, objects: &[&Complex<F>]) -> Option<i32> {
    objects
        .iter()
        .filter_map(|x| shift_window(s, x).map(|w| w.1))
        .max()
}

/// The dimension identity for every generator and every `t ≥ 1` up to the
/// last shift where one of the three Hom-spaces can be nonzero. Since
/// `R = {Σ^i S | i < 0}`, the pairs `(Σ^i S, m ≥ 0)` collapse to `t = m − i`.
pub(crate) fn ses_slots<F: Field>(
    triangle: &Triangle<F>,
    gens: &GeneratorSet<F>,
) -> Result<Vec<SesSlot>> {
    let (r, b, b_next) = (triangle.first(), triangle.second(), triangle.third());
    let mut slots = Vec::new();
    for (j, s) in gens.generators().iter().enumerate() {
        let Some(top) = upper_shift(s, &[r, b, b_next]) else {
            continue;
        };
        for t in 1..=top {
            let r_dim = hom_space(s, r, t + 1)?.dimension();
            let b_next_dim = hom_space(s, b_next, t)?.dimension();
            let b_dim = hom_space(s, b, t + 1)?.dimension();
            slots.push(SesSlot {
                generator: j,
                shift: t,
                r_dim,
                b_next_dim,
                b_dim,
                holds: r_dim == b_next_dim + b_dim,
            });
        }
    }
    Ok(slots)
}

/// Short exact sequence identity for one tower step, recomputed from scratch.
pub fn verify_ses<F: Field>(step: &TowerStep<F>, gens: &GeneratorSet<F>) -> Result<Report<F>> {
    let mut report = Report::new("ses");
    for slot in ses_slots(&step.triangle, gens)? {
        report.push(
            Verdict::new(
                "ses_dimension_identity",
                format!("S{} t={}", slot.generator, slot.shift),
                Level::Assertion,
                slot.holds,
            )
            .dim("hom_r", slot.r_dim)
            .dim("hom_b_next", slot.b_next_dim)
            .dim("hom_b", slot.b_dim),
        );
    }
    Ok(report)
}

fn check_samples<F: Field>(gens: &GeneratorSet<F>, samples: &[Complex<F>]) -> Result<()> {
    for (i, b) in samples.iter().enumerate() {
        if !in_b(b, gens)?.holds {
            return Err(Error::Precondition(format!("sample {i} not in B")));
        }
    }
    Ok(())
}

/// `Hom(Σ^{-m} B_{n+1}, B') → Hom(Σ^{-m} B_n, B')` is onto for `m = 0` and
/// bijective for `m > 0`, for every sample `B'`.
pub fn verify_approx_maps<F: Field>(
    step: &TowerStep<F>,
    gens: &GeneratorSet<F>,
    samples: &[Complex<F>],
) -> Result<Report<F>> {
    check_samples(gens, samples)?;
    let mut report = Report::new("approx_maps");
    for (k, sample) in samples.iter().enumerate() {
        let top = [step.b(), step.b_next()]
            .iter()
            .filter_map(|x| shift_window(x, sample).map(|w| w.1))
            .max()
            .unwrap_or(0)
            .max(0);
        for m in 0..=top {
            let induced = precompose(step.g(), sample, m)?;
            let ok = if m == 0 {
                induced.is_surjective()
            } else {
                induced.is_bijective()
            };
            report.push(
                Verdict::new(
                    "approx_induced_map",
                    format!("sample {k} m={m}"),
                    Level::Assertion,
                    ok,
                )
                .sampled()
                .dim("source", induced.source_dim)
                .dim("target", induced.target_dim)
                .dim("rank", induced.rank),
            );
        }
    }
    Ok(report)
}

/// `Hom(Σ^i g_X, B'): Hom(Σ^i B, B') → Hom(Σ^i X, B')` is bijective for `i < 0`.
pub fn verify_isom<F: Field>(
    dec: &Decomposition<F>,
    gens: &GeneratorSet<F>,
    samples: &[Complex<F>],
) -> Result<Report<F>> {
    check_samples(gens, samples)?;
    let mut report = Report::new("isom");
    for (k, sample) in samples.iter().enumerate() {
        let top = [&dec.input, &dec.b_part]
            .iter()
            .filter_map(|x| shift_window(x, sample).map(|w| w.1))
            .max()
            .unwrap_or(0);
        for shift in 1..=top {
            let induced = precompose(&dec.g_x, sample, shift)?;
            report.push(
                Verdict::new(
                    "isom_induced_map",
                    format!("sample {k} i={}", -shift),
                    Level::Assertion,
                    induced.is_bijective(),
                )
                .sampled()
                .dim("source", induced.source_dim)
                .dim("target", induced.target_dim)
                .dim("rank", induced.rank),
            );
        }
    }
    Ok(report)
}

/// Left approximation property: `Hom(B, B') → Hom(X, B')` is onto for every sample.
pub fn verify_b_approximation<F: Field>(
    dec: &Decomposition<F>,
    gens: &GeneratorSet<F>,
    samples: &[Complex<F>],
) -> Result<Report<F>> {
    check_samples(gens, samples)?;
    let mut report = Report::new("b_approximation");
    for (k, sample) in samples.iter().enumerate() {
        let induced = precompose(&dec.g_x, sample, 0)?;
        report.push(
            Verdict::new(
                "left_approximation",
                format!("sample {k}"),
                Level::Assertion,
                induced.is_surjective(),
            )
            .sampled()
            .dim("source", induced.source_dim)
            .dim("target", induced.target_dim)
            .dim("rank", induced.rank),
        );
    }
    Ok(report)
}

/// Whether `Hom(S, Σ^i g_X)` is bijective for `i < 1`. Informational only.
pub fn setup2_iso_diagnostic<F: Field>(
    dec: &Decomposition<F>,
    gens: &GeneratorSet<F>,
) -> Result<Report<F>> {
    if !check_setup2(gens)?.passed_all() {
        return Err(Error::Precondition(
            "generators do not satisfy the rigidity conditions".into(),
        ));
    }
    let mut report = Report::new("setup2_iso");
    for (j, s) in gens.generators().iter().enumerate() {
        let bottom = [&dec.input, &dec.b_part]
            .iter()
            .filter_map(|x| shift_window(s, x).map(|w| w.0))
            .min();
        let Some(bottom) = bottom else {
            continue;
        };
        for i in bottom..=0 {
            let induced = postcompose(&dec.g_x, s, i)?;
            report.push(
                Verdict::new(
                    "setup2_iso",
                    format!("S{j} i={i}"),
                    Level::Diagnostic,
                    induced.is_bijective(),
                )
                .dim("source", induced.source_dim)
                .dim("target", induced.target_dim)
                .dim("rank", induced.rank),
            );
        }
    }
    Ok(report)
}
