//! Checks of the co-t-structure axioms, the rigidity hypotheses on the
//! generators, and the comparison with the t-structure cut out by them.

use super::generators::GeneratorSet;
use super::membership::{in_a_bar, in_a_sampled, in_b, Membership};
use super::report::{HomWitness, Level, Origin, Report, Verdict};
use super::tower::{decompose, default_max_iter, Decomposition};
use crate::complexes::{
    cohomology_dims, direct_sum, hom_space, is_contractible, is_null_homotopic, ChainMap, Complex,
};
use crate::error::{Error, Result};
use crate::exact_linear::Field;

/// First `i` in `shifts` with `Hom(Σ^i S, T) ≠ 0`, as a witness.
fn first_suspended_hom<F: Field>(
    s: &Complex<F>,
    t: &Complex<F>,
    shifts: impl Iterator<Item = i32>,
    origin: Origin,
) -> Result<Option<HomWitness<F>>> {
    for i in shifts {
        let h = hom_space(&s.suspend(i), t, 0)?;
        if let Some(rep) = h.representatives.first() {
            return Ok(Some(HomWitness::new(origin, rep.clone())));
        }
    }
    Ok(None)
}

/// Shifts `i > 0` with `Σ^i S` and `T` overlapping.
#[allow(clippy::reversed_empty_ranges)]
fn positive_overlap<F: Field>(s: &Complex<F>, t: &Complex<F>) -> std::ops::RangeInclusive<i32> {
    match (s.support(), t.support()) {
        (Some((slo, shi)), Some((tlo, thi))) => (slo - thi).max(1)..=(shi - tlo),
        _ => 1..=0,
    }
}

/// Corigidity `Hom(Σ^i S, S') = 0` for `i > 0` and `Hom(S, ΣS') = 0`.
fn pair_conditions<F: Field>(
    report: &mut Report<F>,
    s: &Complex<F>,
    t: &Complex<F>,
    (j, k): (usize, usize),
    names: (&str, &str),
) -> Result<()> {
    let subject = format!("S{j},S{k}");
    let origin = Origin::GeneratorPair(j, k);
    let w1 = first_suspended_hom(s, t, positive_overlap(s, t), origin.clone())?;
    report
        .push(Verdict::new(names.0, subject.clone(), Level::Hypothesis, w1.is_none()).witness(w1));
    let w2 = hom_space(s, t, 1)?
        .representatives
        .first()
        .map(|rep| HomWitness::new(origin, rep.clone()));
    report.push(Verdict::new(names.1, subject, Level::Hypothesis, w2.is_none()).witness(w2));
    Ok(())
}

/// Both rigidity conditions for every ordered pair of generators.
pub fn check_setup2<F: Field>(gens: &GeneratorSet<F>) -> Result<Report<F>> {
    let mut report = Report::new("setup2");
    for (j, s) in gens.generators().iter().enumerate() {
        for (k, t) in gens.generators().iter().enumerate() {
            pair_conditions(
                &mut report,
                s,
                t,
                (j, k),
                ("setup2_condition_1", "setup2_condition_2"),
            )?;
        }
    }
    Ok(report)
}

/// `Hom(Σ^i S, S) = 0` for `i > 0` and `Hom(S, ΣS) = 0` for a single object.
pub fn check_connected_corigid<F: Field>(s: &Complex<F>) -> Result<Report<F>> {
    let mut report = Report::new("connected_corigid");
    pair_conditions(&mut report, s, s, (0, 0), ("corigid", "connected"))?;
    Ok(report)
}

fn max_iter_for<F: Field>(
    x: &Complex<F>,
    gens: &GeneratorSet<F>,
    max_iter: Option<usize>,
) -> usize {
    max_iter.unwrap_or_else(|| default_max_iter(x, gens))
}

fn membership_verdict<F: Field>(check: &str, subject: String, m: Membership<F>) -> Verdict<F> {
    Verdict::new(check, subject, Level::Assertion, m.holds).witness(m.witness)
}

/// Shift closure, orthogonality, existence of decompositions, summand
/// closure and closure of `B` under finite sums, on a finite test set.
pub fn verify_axioms<F: Field>(
    gens: &GeneratorSet<F>,
    tests: &[Complex<F>],
    max_iter: Option<usize>,
) -> Result<Report<F>> {
    let mut report = Report::new("axioms");
    let mut b_members = Vec::with_capacity(tests.len());
    let mut a_members = Vec::with_capacity(tests.len());
    for (i, x) in tests.iter().enumerate() {
        let b = in_b(x, gens)?.holds;
        if b {
            report.push(membership_verdict(
                "shift_closure_b",
                format!("X{i}"),
                in_b(&x.suspend(1), gens)?,
            ));
        }
        let a = in_a_bar(x, gens)?.holds;
        if a {
            report.push(membership_verdict(
                "shift_closure_a_bar",
                format!("X{i}"),
                in_a_bar(&x.suspend(-1), gens)?,
            ));
        }
        b_members.push(b);
        a_members.push(a);
    }

    let mut decs: Vec<Option<Decomposition<F>>> = Vec::with_capacity(tests.len());
    for (i, x) in tests.iter().enumerate() {
        match decompose(x, gens, max_iter_for(x, gens, max_iter)) {
            Ok(dec) => {
                report.push(
                    Verdict::new("decomposition", format!("X{i}"), Level::Assertion, true)
                        .dim("tower_steps", dec.tower.len()),
                );
                let failures = dec.triangle.failures();
                report.push(
                    Verdict::new(
                        "triangle",
                        format!("X{i}"),
                        Level::Assertion,
                        failures.is_empty(),
                    )
                    .detail(failures.join("; ")),
                );
                decs.push(Some(dec));
            }
            Err(Error::NonTerminating { max_iter, .. }) => {
                report.push(
                    Verdict::new("decomposition", format!("X{i}"), Level::Assertion, false)
                        .detail(format!("tower did not terminate within {max_iter} steps")),
                );
                decs.push(None);
            }
            Err(e) => return Err(e),
        }
    }

    for (i, di) in decs.iter().enumerate() {
        let Some(di) = di else { continue };
        let a = di.a_part.suspend(-1);
        for (j, dj) in decs.iter().enumerate() {
            let Some(dj) = dj else { continue };
            let w = hom_space(&a, &dj.b_part, 0)?
                .representatives
                .first()
                .map(|rep| HomWitness::new(Origin::Objects(i, j), rep.clone()));
            report.push(
                Verdict::new(
                    "orthogonality",
                    format!("A{i},B{j}"),
                    Level::Assertion,
                    w.is_none(),
                )
                .witness(w),
            );
        }
    }

    let n = tests.len();
    for i in 0..n {
        let j = (i + 1) % n;
        let sum = direct_sum(gens.algebra(), &[tests[i].clone(), tests[j].clone()])?.sum;
        let subject = format!("X{i}+X{j}");
        let (pi, pj, ps) = (
            gens.hom_profile(&tests[i])?,
            gens.hom_profile(&tests[j])?,
            gens.hom_profile(&sum)?,
        );
        let additive = (0..gens.len()).all(|g| {
            let mut expected = pi[g].clone();
            for (&m, &d) in &pj[g] {
                *expected.entry(m).or_insert(0) += d;
            }
            expected == ps[g]
        });
        report.push(Verdict::new(
            "hom_additivity",
            subject.clone(),
            Level::Assertion,
            additive,
        ));
        let sum_b = in_b(&sum, gens)?.holds;
        let sum_a = in_a_bar(&sum, gens)?.holds;
        report.push(Verdict::new(
            "summand_closure_b",
            subject.clone(),
            Level::Assertion,
            !sum_b || (b_members[i] && b_members[j]),
        ));
        report.push(Verdict::new(
            "summand_closure_a_bar",
            subject.clone(),
            Level::Assertion,
            !sum_a || (a_members[i] && a_members[j]),
        ));
        if b_members[i] && b_members[j] {
            report.push(Verdict::new(
                "finite_coproduct_b",
                subject,
                Level::Assertion,
                sum_b,
            ));
        }
    }
    Ok(report)
}

/// Compares exact `Ā`-membership with the behaviour of the decomposition.
///
/// `X ∈ Ā` is compared with the left `B`-approximation of `Σ^{-1} X` being
/// zero, and `X ∈ Ā` with sampled membership in `A`. These comparisons are
/// assertions only when the rigidity conditions of [`check_setup2`] hold and
/// diagnostics otherwise. The weaker comparison with the contractibility of
/// the `B` part of `X` itself is always a diagnostic: an object in `Ā ∩ B`
/// such as a stalk in degree 0 is its own `B` part.
pub fn membership_equality_suite<F: Field>(
    gens: &GeneratorSet<F>,
    tests: &[Complex<F>],
    samples: &[Complex<F>],
    max_iter: Option<usize>,
) -> Result<Report<F>> {
    if !gens.is_generating() {
        return Err(Error::Precondition(
            "generator set is not flagged as generating".into(),
        ));
    }
    let mut report = Report::new("membership_equality");
    let rigid = check_setup2(gens)?.passed_all();
    report.push(Verdict::new(
        "rigidity_conditions",
        "generators",
        Level::Hypothesis,
        rigid,
    ));
    let level = if rigid {
        Level::Assertion
    } else {
        Level::Diagnostic
    };
    for (i, x) in tests.iter().enumerate() {
        let subject = format!("X{i}");
        let a = in_a_bar(x, gens)?;
        let dec = decompose(x, gens, max_iter_for(x, gens, max_iter))?;
        let b_zero = is_contractible(&dec.b_part);
        report.push(
            Verdict::new(
                "a_bar_iff_b_part_zero",
                subject.clone(),
                Level::Diagnostic,
                a.holds == b_zero,
            )
            .detail(format!("in_a_bar={} b_part_contractible={b_zero}", a.holds)),
        );
        report.push(Verdict::new(
            "b_part_zero_implies_a_bar",
            subject.clone(),
            level,
            !b_zero || a.holds,
        ));
        let shifted = x.suspend(-1);
        let dec_shifted = decompose(&shifted, gens, max_iter_for(&shifted, gens, max_iter))?;
        let g_zero = is_null_homotopic(&dec_shifted.g_x).is_some();
        let witness = match (a.holds, g_zero) {
            (true, false) => Some(HomWitness::new(
                Origin::Approximation,
                dec_shifted.g_x.clone(),
            )),
            (false, true) => a.witness.clone(),
            _ => None,
        };
        report.push(
            Verdict::new(
                "a_bar_iff_shifted_approximation_zero",
                subject.clone(),
                level,
                a.holds == g_zero,
            )
            .witness(witness),
        );
        if a.holds {
            let sampled = in_a_sampled(x, gens, samples)?;
            let mut v =
                membership_verdict("a_bar_implies_a_sampled", subject.clone(), sampled).sampled();
            v.level = level;
            report.push(v);
        }
        let mut v = membership_verdict("a_part_in_a_bar", subject, dec.a_bar.clone());
        v.level = level;
        report.push(v);
    }
    Ok(report)
}

/// For every probe all of whose Homs from the shifted generators vanish,
/// checks that it is contractible. A non-contractible such probe shows the
/// generators do not generate; its identity is the witness.
pub fn generating_diagnostic<F: Field>(
    gens: &GeneratorSet<F>,
    probes: &[Complex<F>],
) -> Result<Report<F>> {
    let level = if gens.is_generating() {
        Level::Assertion
    } else {
        Level::Diagnostic
    };
    let mut report = Report::new("generating");
    for (i, x) in probes.iter().enumerate() {
        let detected = gens.hom_profile(x)?.iter().any(|p| !p.is_empty());
        let verdict = if detected {
            Verdict::new("generation", format!("probe {i}"), level, true).detail("detected")
        } else if is_contractible(x) {
            Verdict::new("generation", format!("probe {i}"), level, true).detail("zero object")
        } else {
            Verdict::new("generation", format!("probe {i}"), level, false)
                .detail("nonzero object invisible to all shifts of the generators")
                .witness(Some(HomWitness::new(
                    Origin::Identity,
                    ChainMap::identity(x),
                )))
        };
        report.push(verdict);
    }
    Ok(report)
}

/// Default search radius for [`nondegeneracy_window`]: large enough that the
/// supports of `Σ^n X` and every generator stop overlapping.
pub fn default_window<F: Field>(gens: &GeneratorSet<F>, x: &Complex<F>) -> usize {
    let spans = (x.span() + gens.span() + 1) as usize;
    let overlap = match x.support() {
        Some((lo, hi)) => gens
            .generators()
            .iter()
            .filter_map(|s| s.support())
            .map(|(slo, shi)| (lo - shi).abs().max((hi - slo).abs()) as usize + 1)
            .max()
            .unwrap_or(0),
        None => 0,
    };
    spans.max(overlap)
}

/// `0, −1, 1, −2, 2, …` up to the radius.
fn search_order(window: usize) -> impl Iterator<Item = i32> {
    let w = window as i32;
    std::iter::once(0).chain((1..=w).flat_map(|k| [-k, k]))
}

/// Shifts `n` with `Σ^n X ∉ B` and `m` with `Σ^m X ∉ Ā`, searched outward
/// from zero. Exhausting the window is reported as inconclusive.
pub fn nondegeneracy_window<F: Field>(
    gens: &GeneratorSet<F>,
    x: &Complex<F>,
    window: Option<usize>,
) -> Result<Report<F>> {
    if is_contractible(x) {
        return Err(Error::Precondition(
            "object is zero in the homotopy category".into(),
        ));
    }
    let window = window.unwrap_or_else(|| default_window(gens, x));
    let mut report = Report::new("nondegeneracy");
    if gens.hom_profile(x)?.iter().all(|p| p.is_empty()) {
        let level = if gens.is_generating() {
            Level::Assertion
        } else {
            Level::Diagnostic
        };
        for check in ["nondegenerate_b", "nondegenerate_a_bar"] {
            report.push(
                Verdict::new(check, "every shift", level, false)
                    .detail("no shift of a generator maps to the object, so all its shifts lie in both classes")
                    .witness(Some(HomWitness::new(Origin::Identity, ChainMap::identity(x)))),
            );
        }
        return Ok(report);
    }
    type Test<F> = fn(&Complex<F>, &GeneratorSet<F>) -> Result<Membership<F>>;
    let tests: [(&str, Test<F>); 2] =
        [("nondegenerate_b", in_b), ("nondegenerate_a_bar", in_a_bar)];
    for (check, test) in tests {
        let mut found = None;
        for n in search_order(window) {
            let m = test(&x.suspend(n), gens)?;
            if !m.holds {
                found = Some((n, m.witness));
                break;
            }
        }
        let verdict = match found {
            Some((n, w)) => Verdict::new(check, format!("shift {n}"), Level::Assertion, true)
                .detail(format!("shift {n} leaves the class"))
                .witness(w),
            None => Verdict::new(check, "window exhausted", Level::Assertion, false).inconclusive(),
        };
        report.push(verdict.dim("window", window));
    }
    Ok(report)
}

/// Hypotheses for the co-t-structure to be left adjacent to the t-structure
/// generated by the same objects, and an independent check of `B` against
/// cohomology when the generator is the algebra over a point.
pub fn adjacency_report<F: Field>(
    gens: &GeneratorSet<F>,
    tests: &[Complex<F>],
) -> Result<Report<F>> {
    let mut report = Report::new("adjacency");
    let mut rigid = true;
    for (j, s) in gens.generators().iter().enumerate() {
        for (k, t) in gens.generators().iter().enumerate() {
            let mut w = None;
            if let Some((_, hi)) = crate::complexes::shift_window(s, t) {
                for i in 1..=hi {
                    if let Some(rep) = hom_space(s, t, i)?.representatives.first() {
                        w = Some(HomWitness::new(Origin::GeneratorPair(j, k), rep.clone()));
                        break;
                    }
                }
            }
            rigid &= w.is_none();
            report.push(
                Verdict::new(
                    "rigidity",
                    format!("S{j},S{k}"),
                    Level::Hypothesis,
                    w.is_none(),
                )
                .witness(w),
            );
        }
    }
    let generation = generating_diagnostic(&gens.clone().with_generating(false), tests)?;
    let generating = generation.passed_all();
    report.push(
        Verdict::new("generating", "test objects", Level::Hypothesis, generating)
            .sampled()
            .detail(format!("{} probes", tests.len())),
    );
    report.extend(generation);
    report.push(
        Verdict::new("b_equals_aisle", "definition", Level::Diagnostic, true)
            .detail("both are Hom(S, Σ^n -) = 0 for n > 0"),
    );
    let alg = gens.algebra();
    let point = alg.vertex_count() == 1 && alg.quiver().arrows().is_empty();
    if point && gens.len() == 1 && gens.get(0) == &Complex::algebra_stalk(alg.clone()) {
        for (i, x) in tests.iter().enumerate() {
            let b = in_b(x, gens)?.holds;
            let truncated = cohomology_dims(x).keys().all(|&n| n <= 0);
            report.push(Verdict::new(
                "b_matches_cohomology",
                format!("X{i}"),
                Level::Assertion,
                b == truncated,
            ));
        }
    }
    report.push(
        Verdict::new(
            "left_adjacent",
            "generators",
            Level::Hypothesis,
            rigid && generating,
        )
        .detail(if rigid && generating {
            "hypotheses hold on the test set"
        } else {
            "not established"
        }),
    );
    Ok(report)
}
