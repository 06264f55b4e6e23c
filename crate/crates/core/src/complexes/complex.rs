use std::borrow::Cow;
use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::block::BlockMap;
use crate::algebra::PathAlgebra;
use crate::error::{Error, Result};
use crate::exact_linear::Field;

/// A bounded cochain complex `… → X^n → X^{n+1} → …` whose terms are finite
/// direct sums of indecomposable projectives `P_v`.
///
/// Terms are stored contiguously from the lowest to the highest nonzero
/// degree; the zero complex has no terms at all.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Complex<F> {
    algebra: Arc<PathAlgebra>,
    lo: i32,
    terms: Vec<Vec<usize>>,
    /// `diffs[k]` is the differential out of degree `lo + k`.
    diffs: Vec<BlockMap<F>>,
}

impl<F: Field> Complex<F> {
    /// Validates shapes, idempotent compatibility and `d∘d = 0`. Missing
    /// differentials are zero.
    pub fn new(
        algebra: Arc<PathAlgebra>,
        terms: BTreeMap<i32, Vec<usize>>,
        diffs: BTreeMap<i32, BlockMap<F>>,
    ) -> Result<Self> {
        let n_vertices = algebra.vertex_count();
        for (&deg, summands) in &terms {
            if let Some(&v) = summands.iter().find(|&&v| v >= n_vertices) {
                return Err(Error::InvalidComplex {
                    degree: deg,
                    message: format!("vertex index {v} out of range"),
                });
            }
        }
        let empty = Vec::new();
        let term = |n: i32| terms.get(&n).unwrap_or(&empty);
        for (&deg, d) in &diffs {
            if d.cols() != term(deg).as_slice() || d.rows() != term(deg + 1).as_slice() {
                return Err(Error::InvalidComplex {
                    degree: deg,
                    message: format!(
                        "differential is {}x{} but terms have {} and {} summands",
                        d.rows().len(),
                        d.cols().len(),
                        term(deg + 1).len(),
                        term(deg).len()
                    ),
                });
            }
            if let Some((r, c)) = d.misplaced_entry(&algebra) {
                return Err(Error::InvalidComplex {
                    degree: deg,
                    message: format!(
                        "entry ({r}, {c}) is not in e_{}·A·e_{}",
                        algebra.vertex_label(d.rows()[r]),
                        algebra.vertex_label(d.cols()[c])
                    ),
                });
            }
        }
        let nonzero: Vec<i32> = terms
            .iter()
            .filter(|(_, s)| !s.is_empty())
            .map(|(&d, _)| d)
            .collect();
        let (Some(&lo), Some(&hi)) = (nonzero.first(), nonzero.last()) else {
            return Ok(Self::zero(algebra));
        };
        let contiguous_terms: Vec<Vec<usize>> = (lo..=hi).map(|n| term(n).clone()).collect();
        let contiguous_diffs = (lo..hi)
            .map(|n| {
                diffs
                    .get(&n)
                    .cloned()
                    .unwrap_or_else(|| BlockMap::zero(term(n + 1), term(n)))
            })
            .collect();
        let x = Complex {
            algebra,
            lo,
            terms: contiguous_terms,
            diffs: contiguous_diffs,
        };
        if let Some(deg) = x.first_nonzero_square() {
            return Err(Error::InvalidComplex {
                degree: deg,
                message: format!("d^{} ∘ d^{} is nonzero", deg + 1, deg),
            });
        }
        Ok(x)
    }

    /// Builds a complex from vertex labels and differential entries written as
    /// formal sums, e.g. `from_labels(alg, &[(0, &["1"]), (1, &["2"])], &[(0, &[&["a1"]])])`.
    pub fn from_labels(
        algebra: Arc<PathAlgebra>,
        terms: &[(i32, &[&str])],
        diffs: &[(i32, &[&[&str]])],
    ) -> Result<Self> {
        let mut term_map = BTreeMap::new();
        for &(deg, labels) in terms {
            let summands = labels
                .iter()
                .map(|l| {
                    algebra
                        .quiver()
                        .vertex_index(l)
                        .ok_or_else(|| crate::algebra::AlgebraError::UnknownVertex(l.to_string()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            term_map.insert(deg, summands);
        }
        let empty = Vec::new();
        let mut diff_map = BTreeMap::new();
        for &(deg, rows) in diffs {
            let cols = term_map.get(&deg).unwrap_or(&empty);
            let targets = term_map.get(&(deg + 1)).unwrap_or(&empty);
            if rows.len() != targets.len() || rows.iter().any(|r| r.len() != cols.len()) {
                return Err(Error::InvalidComplex {
                    degree: deg,
                    message: "differential shape does not match the terms".into(),
                });
            }
            let mut d = BlockMap::zero(targets, cols);
            for (r, row) in rows.iter().enumerate() {
                for (c, entry) in row.iter().enumerate() {
                    d.set(r, c, algebra.parse_element(entry)?);
                }
            }
            diff_map.insert(deg, d);
        }
        Self::new(algebra, term_map, diff_map)
    }

    /// Assembles a complex from already-validated parts and trims zero terms
    /// at both ends.
    pub(crate) fn from_parts(
        algebra: Arc<PathAlgebra>,
        lo: i32,
        mut terms: Vec<Vec<usize>>,
        mut diffs: Vec<BlockMap<F>>,
    ) -> Self {
        debug_assert_eq!(diffs.len(), terms.len().saturating_sub(1));
        let mut lo = lo;
        while terms.first().is_some_and(|t| t.is_empty()) {
            terms.remove(0);
            if !diffs.is_empty() {
                diffs.remove(0);
            }
            lo += 1;
        }
        while terms.last().is_some_and(|t| t.is_empty()) {
            terms.pop();
            diffs.pop();
        }
        if terms.is_empty() {
            return Self::zero(algebra);
        }
        let x = Complex {
            algebra,
            lo,
            terms,
            diffs,
        };
        debug_assert!(x.first_nonzero_square().is_none(), "d∘d ≠ 0");
        x
    }

    pub fn zero(algebra: Arc<PathAlgebra>) -> Self {
        Complex {
            algebra,
            lo: 0,
            terms: Vec::new(),
            diffs: Vec::new(),
        }
    }

    /// The stalk complex with the given summands in one degree.
    pub fn stalk(algebra: Arc<PathAlgebra>, summands: Vec<usize>, degree: i32) -> Self {
        Self::from_parts(algebra, degree, vec![summands], Vec::new())
    }

    /// The stalk of the regular module `A = ⊕_v P_v` in degree 0.
    pub fn algebra_stalk(algebra: Arc<PathAlgebra>) -> Self {
        let all = (0..algebra.vertex_count()).collect();
        Self::stalk(algebra, all, 0)
    }

    pub fn algebra(&self) -> &Arc<PathAlgebra> {
        &self.algebra
    }

    pub fn same_algebra(&self, other: &Complex<F>) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra
    }

    /// True for the complex with no terms (literal zero data). The zero
    /// object of the homotopy category is tested with `is_contractible`.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest and highest nonzero degree.
    pub fn support(&self) -> Option<(i32, i32)> {
        if self.terms.is_empty() {
            None
        } else {
            Some((self.lo, self.lo + self.terms.len() as i32 - 1))
        }
    }

    /// `hi − lo + 1`, zero for the empty complex.
    pub fn span(&self) -> i32 {
        self.terms.len() as i32
    }

    pub fn term(&self, n: i32) -> &[usize] {
        let k = n - self.lo;
        if k < 0 || k as usize >= self.terms.len() {
            &[]
        } else {
            &self.terms[k as usize]
        }
    }

    /// The differential `d^n: X^n → X^{n+1}`, zero outside the stored range.
    pub fn diff(&self, n: i32) -> Cow<'_, BlockMap<F>> {
        let k = n - self.lo;
        if k < 0 || k as usize >= self.diffs.len() {
            Cow::Owned(BlockMap::zero(self.term(n + 1), self.term(n)))
        } else {
            Cow::Borrowed(&self.diffs[k as usize])
        }
    }

    pub fn total_rank(&self) -> usize {
        self.terms.iter().map(|t| t.len()).sum()
    }

    /// `Σ^n X`: `(Σ^n X)^k = X^{k+n}` with differential multiplied by `(−1)^n`.
    pub fn suspend(&self, n: i32) -> Self {
        let diffs = if n % 2 == 0 {
            self.diffs.clone()
        } else {
            self.diffs.iter().map(|d| d.neg()).collect()
        };
        Complex {
            algebra: self.algebra.clone(),
            lo: self.lo - n,
            terms: self.terms.clone(),
            diffs,
        }
    }

    /// Reorders the summands of degree `n` by `perm` (new position `i` holds
    /// old summand `perm[i]`), conjugating the adjacent differentials.
    pub fn reorder_term(&self, n: i32, perm: &[usize]) -> Self {
        let old = self.term(n).to_vec();
        assert_eq!(perm.len(), old.len(), "permutation length");
        let new_terms: Vec<usize> = perm.iter().map(|&i| old[i]).collect();
        let mut out = self.clone();
        if old.is_empty() {
            return out;
        }
        let k = (n - self.lo) as usize;
        out.terms[k] = new_terms.clone();
        if k < self.diffs.len() {
            let d = &self.diffs[k];
            let mut nd = BlockMap::zero(d.rows(), &new_terms);
            for r in 0..d.rows().len() {
                for (c, &old_c) in perm.iter().enumerate() {
                    nd.set(r, c, d.get(r, old_c).clone());
                }
            }
            out.diffs[k] = nd;
        }
        if k > 0 {
            let d = &self.diffs[k - 1];
            let mut nd = BlockMap::zero(&new_terms, d.cols());
            for (r, &old_r) in perm.iter().enumerate() {
                for c in 0..d.cols().len() {
                    nd.set(r, c, d.get(old_r, c).clone());
                }
            }
            out.diffs[k - 1] = nd;
        }
        out
    }

    fn first_nonzero_square(&self) -> Option<i32> {
        (1..self.diffs.len()).find_map(|k| {
            let dd = self.diffs[k].compose(&self.algebra, &self.diffs[k - 1]);
            (!dd.is_zero()).then_some(self.lo + k as i32 - 1)
        })
    }

    pub fn summary(&self) -> ComplexSummary {
        ComplexSummary {
            support: self.support(),
            ranks: (0..self.terms.len())
                .filter(|&k| !self.terms[k].is_empty())
                .map(|k| (self.lo + k as i32, self.terms[k].len()))
                .collect(),
        }
    }

    /// Vertex labels per degree and differential entries as formal sums.
    pub fn view(&self) -> ComplexView {
        let alg = &self.algebra;
        ComplexView {
            terms: (0..self.terms.len())
                .map(|k| {
                    let labels = self.terms[k]
                        .iter()
                        .map(|&v| alg.vertex_label(v).to_string())
                        .collect();
                    (self.lo + k as i32, labels)
                })
                .collect(),
            differentials: self
                .diffs
                .iter()
                .enumerate()
                .filter(|(_, d)| !d.is_zero())
                .map(|(k, d)| (self.lo + k as i32, d.format_rows(alg)))
                .collect(),
        }
    }
}

/// Degree support and ranks, used in reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexSummary {
    pub support: Option<(i32, i32)>,
    pub ranks: BTreeMap<i32, usize>,
}

/// Full printable form of a complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexView {
    pub terms: BTreeMap<i32, Vec<String>>,
    pub differentials: BTreeMap<i32, Vec<Vec<String>>>,
}
