//! On-disk formats for algebras and complexes. Both are TOML with a mandatory
//! `format-version`; unknown keys are rejected.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use cotstruct_core::algebra::{PathAlgebra, Quiver};
use cotstruct_core::complexes::{BlockMap, Complex};
use cotstruct_core::exact_linear::Field;

use crate::error::CliError;

pub const FORMAT_VERSION: u32 = 1;

/// Prime characteristics that can be selected at run time.
pub const SUPPORTED_PRIMES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 101];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldSpec {
    Prime(u32),
    Rational,
}

impl FieldSpec {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        let s = s.trim();
        if s == "rational" {
            return Ok(FieldSpec::Rational);
        }
        match s.parse::<u32>() {
            Ok(p) if SUPPORTED_PRIMES.contains(&p) => Ok(FieldSpec::Prime(p)),
            _ => Err(CliError::input(format!(
                "unsupported field {s:?}; expected \"rational\" or one of {SUPPORTED_PRIMES:?}"
            ))),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "{p}"),
            FieldSpec::Rational => write!(f, "rational"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct AlgebraFile {
    pub format_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub quiver: QuiverSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverSpec {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<ArrowSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub label: String,
    pub source: String,
    pub target: String,
}

/// Either a path to an algebra file, relative to the referring file, or the
/// algebra written inline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Path(String),
    Inline(AlgebraFile),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ComplexFile {
    pub format_version: u32,
    pub algebra: AlgebraRef,
    #[serde(default, rename = "degree")]
    pub degrees: Vec<DegreeSpec>,
}

/// One nonzero term. `differential` maps this degree to the next: one row
/// per summand of degree + 1, one column per summand here.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeSpec {
    pub degree: i32,
    pub summands: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub differential: Option<Vec<Vec<String>>>,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn parse_toml<T: for<'de> Deserialize<'de>>(path: &Path, text: &str) -> Result<T, CliError> {
    toml::from_str(text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn check_version(path: &Path, v: u32) -> Result<(), CliError> {
    if v != FORMAT_VERSION {
        return Err(CliError::input(format!(
            "{}: unsupported format-version {v}, expected {FORMAT_VERSION}",
            path.display()
        )));
    }
    Ok(())
}

impl AlgebraFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let file: AlgebraFile = parse_toml(path, &read(path)?)?;
        file.validate(path)?;
        Ok(file)
    }

    fn validate(&self, path: &Path) -> Result<(), CliError> {
        check_version(path, self.format_version)?;
        if let Some(f) = &self.field {
            FieldSpec::parse(f).map_err(|e| e.context(path))?;
        }
        self.quiver().map_err(|e| e.context(path))?;
        Ok(())
    }

    pub fn quiver(&self) -> Result<Quiver, CliError> {
        let arrows = self
            .quiver
            .arrows
            .iter()
            .map(|a| (a.label.clone(), a.source.clone(), a.target.clone()))
            .collect();
        Quiver::new(self.quiver.vertices.clone(), arrows)
            .map_err(|e| CliError::input(e.to_string()))
    }

    pub fn from_algebra(alg: &PathAlgebra, field: FieldSpec) -> Self {
        let q = alg.quiver();
        AlgebraFile {
            format_version: FORMAT_VERSION,
            field: Some(field.to_string()),
            quiver: QuiverSpec {
                vertices: q.vertices().to_vec(),
                arrows: q
                    .arrows()
                    .iter()
                    .map(|a| ArrowSpec {
                        label: a.label.clone(),
                        source: q.vertices()[a.source].clone(),
                        target: q.vertices()[a.target].clone(),
                    })
                    .collect(),
            },
        }
    }
}

/// A complex file with its algebra resolved, not yet bound to a field.
#[derive(Debug, Clone)]
pub struct RawComplex {
    pub path: PathBuf,
    pub algebra: AlgebraFile,
    pub degrees: Vec<DegreeSpec>,
}

impl RawComplex {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let file: ComplexFile = parse_toml(path, &read(path)?)?;
        check_version(path, file.format_version)?;
        let algebra = match file.algebra {
            AlgebraRef::Path(p) => {
                let base = path.parent().unwrap_or(Path::new("."));
                AlgebraFile::load(&base.join(p))?
            }
            AlgebraRef::Inline(a) => {
                a.validate(path)?;
                a
            }
        };
        let mut seen = std::collections::BTreeSet::new();
        for d in &file.degrees {
            if !seen.insert(d.degree) {
                return Err(CliError::input(format!(
                    "{}: degree {} listed twice",
                    path.display(),
                    d.degree
                )));
            }
        }
        Ok(RawComplex {
            path: path.to_path_buf(),
            algebra,
            degrees: file.degrees,
        })
    }

    /// Binds the scalars. Shapes, vertex labels, entries, idempotent
    /// compatibility and `d∘d = 0` are all checked, with locations.
    pub fn build<F: Field>(&self, alg: &Arc<PathAlgebra>) -> Result<Complex<F>, CliError> {
        let at = |msg: String| CliError::input(format!("{}: {msg}", self.path.display()));
        let mut terms = BTreeMap::new();
        for d in &self.degrees {
            let summands = d
                .summands
                .iter()
                .map(|l| {
                    alg.quiver()
                        .vertex_index(l)
                        .ok_or_else(|| at(format!("degree {}: unknown vertex {l:?}", d.degree)))
                })
                .collect::<Result<Vec<_>, _>>()?;
            terms.insert(d.degree, summands);
        }
        let empty = Vec::new();
        let mut diffs = BTreeMap::new();
        for d in &self.degrees {
            let Some(rows) = &d.differential else {
                continue;
            };
            let cols = &terms[&d.degree];
            let targets = terms.get(&(d.degree + 1)).unwrap_or(&empty);
            if rows.len() != targets.len() {
                return Err(at(format!(
                    "degree {}: differential has {} rows, degree {} has {} summands",
                    d.degree,
                    rows.len(),
                    d.degree + 1,
                    targets.len()
                )));
            }
            let mut block = BlockMap::zero(targets, cols);
            for (r, row) in rows.iter().enumerate() {
                if row.len() != cols.len() {
                    return Err(at(format!(
                        "degree {}: row {r} has {} entries, expected {}",
                        d.degree,
                        row.len(),
                        cols.len()
                    )));
                }
                for (c, entry) in row.iter().enumerate() {
                    let x = alg
                        .parse_element::<F>(entry)
                        .map_err(|e| at(format!("degree {}, entry ({r},{c}): {e}", d.degree)))?;
                    block.set(r, c, x);
                }
            }
            diffs.insert(d.degree, block);
        }
        Complex::new(alg.clone(), terms, diffs).map_err(|e| at(e.to_string()))
    }
}

/// Serializes a complex with its algebra inline.
pub fn complex_file<F: Field>(x: &Complex<F>, field: FieldSpec) -> ComplexFile {
    let view = x.view();
    let degrees = view
        .terms
        .iter()
        .filter(|(_, s)| !s.is_empty())
        .map(|(&n, summands)| DegreeSpec {
            degree: n,
            summands: summands.clone(),
            differential: view.differentials.get(&n).cloned(),
        })
        .collect();
    ComplexFile {
        format_version: FORMAT_VERSION,
        algebra: AlgebraRef::Inline(AlgebraFile::from_algebra(x.algebra(), field)),
        degrees,
    }
}

pub fn to_toml<T: Serialize>(value: &T) -> String {
    toml::to_string(value).expect("format types serialize to TOML")
}
