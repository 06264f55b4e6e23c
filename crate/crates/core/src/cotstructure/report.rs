use std::collections::BTreeMap;

use serde::Serialize;

use crate::complexes::{is_null_homotopic, ChainMap, ChainMapView};
use crate::exact_linear::Field;

/// How much a verdict is allowed to affect the overall result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    /// A claim the engine guarantees; failure is a bug or a false premise.
    Assertion,
    /// A hypothesis of some statement; failure only means it does not apply.
    Hypothesis,
    /// Recorded for information.
    Diagnostic,
}

/// Exact verdicts quantify over everything; sampled ones over a sample set only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Tier {
    Exact,
    Sampled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
}

/// Where a witness class lives.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    /// `Hom(S_generator, Σ^shift X)`.
    Generator(usize),
    /// `Hom(S_first, Σ^shift S_second)` or its variants between generators.
    GeneratorPair(usize, usize),
    /// A map out of (a shift of) the object into a sample.
    Sample(usize),
    /// A map between two objects of a test set.
    Objects(usize, usize),
    /// The identity of the object itself.
    Identity,
    /// The left `B`-approximation of a shift of the object.
    Approximation,
}

/// A homotopy class that is claimed to be nonzero.
#[derive(Debug, Clone)]
pub struct HomWitness<F> {
    pub origin: Origin,
    pub class: ChainMap<F>,
}

impl<F: Field> HomWitness<F> {
    pub fn new(origin: Origin, class: ChainMap<F>) -> Self {
        HomWitness { origin, class }
    }

    /// Re-checks that the class is a chain map and not null-homotopic.
    pub fn verify(&self) -> bool {
        self.class.is_chain_map() && is_null_homotopic(&self.class).is_none()
    }
}

#[derive(Serialize)]
struct WitnessView<'a> {
    origin: &'a Origin,
    shift: i32,
    class: ChainMapView,
}

impl<F: Field> Serialize for HomWitness<F> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        WitnessView {
            origin: &self.origin,
            shift: self.class.shift(),
            class: self.class.view(),
        }
        .serialize(serializer)
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(bound(serialize = "F: Field"))]
pub struct Verdict<F> {
    pub check: String,
    pub subject: String,
    pub level: Level,
    pub tier: Tier,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub dims: BTreeMap<String, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<HomWitness<F>>,
}

impl<F: Field> Verdict<F> {
    pub fn new(check: &str, subject: impl Into<String>, level: Level, passed: bool) -> Self {
        Verdict {
            check: check.to_string(),
            subject: subject.into(),
            level,
            tier: Tier::Exact,
            outcome: if passed { Outcome::Pass } else { Outcome::Fail },
            detail: None,
            dims: BTreeMap::new(),
            witness: None,
        }
    }

    pub fn sampled(mut self) -> Self {
        self.tier = Tier::Sampled;
        self
    }

    pub fn inconclusive(mut self) -> Self {
        self.outcome = Outcome::Inconclusive;
        self
    }

    pub fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }

    pub fn dim(mut self, key: impl Into<String>, value: usize) -> Self {
        self.dims.insert(key.into(), value);
        self
    }

    pub fn witness(mut self, w: Option<HomWitness<F>>) -> Self {
        self.witness = w;
        self
    }

    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    /// Failed or inconclusive assertion.
    pub fn is_violation(&self) -> bool {
        self.level == Level::Assertion && !self.passed()
    }
}

/// A named list of verdicts.
#[derive(Debug, Clone, Serialize)]
#[serde(bound(serialize = "F: Field"))]
pub struct Report<F> {
    pub name: String,
    pub verdicts: Vec<Verdict<F>>,
}

impl<F: Field> Report<F> {
    pub fn new(name: &str) -> Self {
        Report {
            name: name.to_string(),
            verdicts: Vec::new(),
        }
    }

    pub fn push(&mut self, v: Verdict<F>) {
        self.verdicts.push(v);
    }

    pub fn extend(&mut self, other: Report<F>) {
        self.verdicts.extend(other.verdicts);
    }

    /// No assertion failed or was left inconclusive.
    pub fn passed(&self) -> bool {
        !self.verdicts.iter().any(Verdict::is_violation)
    }

    /// Every verdict passed, whatever its level.
    pub fn passed_all(&self) -> bool {
        self.verdicts.iter().all(Verdict::passed)
    }

    pub fn violations(&self) -> impl Iterator<Item = &Verdict<F>> {
        self.verdicts.iter().filter(|v| v.is_violation())
    }

    /// Every failing verdict that carries a witness re-verifies it.
    pub fn witnesses_verify(&self) -> bool {
        self.verdicts
            .iter()
            .filter_map(|v| v.witness.as_ref())
            .all(HomWitness::verify)
    }

    pub fn count(&self, outcome: Outcome) -> usize {
        self.verdicts
            .iter()
            .filter(|v| v.outcome == outcome)
            .count()
    }
}
