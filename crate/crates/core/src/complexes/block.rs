//! Module maps between finite direct sums of indecomposable projectives,
//! stored as block matrices of path-algebra elements.

use crate::algebra::{AlgebraElement, PathAlgebra};
use crate::exact_linear::{Field, Matrix};

/// A map `⊕_c P_{cols[c]} → ⊕_r P_{rows[r]}`. Entry `(r, c)` lies in
/// `e_{rows[r]}·A·e_{cols[c]}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlockMap<F> {
    rows: Vec<usize>,
    cols: Vec<usize>,
    entries: Vec<AlgebraElement<F>>,
}

impl<F: Field> BlockMap<F> {
    pub fn zero(rows: &[usize], cols: &[usize]) -> Self {
        BlockMap {
            rows: rows.to_vec(),
            cols: cols.to_vec(),
            entries: vec![AlgebraElement::zero(); rows.len() * cols.len()],
        }
    }

    pub fn identity(alg: &PathAlgebra, summands: &[usize]) -> Self {
        let mut m = Self::zero(summands, summands);
        for (i, &v) in summands.iter().enumerate() {
            m.set(i, i, AlgebraElement::basis(alg.idempotent(v)));
        }
        m
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &AlgebraElement<F> {
        &self.entries[r * self.cols.len() + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: AlgebraElement<F>) {
        let n = self.cols.len();
        self.entries[r * n + c] = x;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    /// First entry not supported in its idempotent-truncated space.
    pub fn misplaced_entry(&self, alg: &PathAlgebra) -> Option<(usize, usize)> {
        for r in 0..self.rows.len() {
            for c in 0..self.cols.len() {
                if !alg.supported_in(self.get(r, c), self.cols[c], self.rows[r]) {
                    return Some((r, c));
                }
            }
        }
        None
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, alg: &PathAlgebra, other: &BlockMap<F>) -> BlockMap<F> {
        assert_eq!(self.cols, other.rows, "block maps are not composable");
        let mut out = BlockMap::zero(&self.rows, &other.cols);
        for r in 0..self.rows.len() {
            for c in 0..other.cols.len() {
                let mut acc = AlgebraElement::zero();
                for k in 0..self.cols.len() {
                    let (x, y) = (self.get(r, k), other.get(k, c));
                    if !x.is_zero() && !y.is_zero() {
                        acc = acc.add(&alg.multiply(x, y));
                    }
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    pub fn add(&self, other: &BlockMap<F>) -> BlockMap<F> {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.cols, other.cols);
        BlockMap {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(x, y)| x.add(y))
                .collect(),
        }
    }

    pub fn scale(&self, c: &F) -> BlockMap<F> {
        BlockMap {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            entries: self.entries.iter().map(|x| x.scale(c)).collect(),
        }
    }

    pub fn neg(&self) -> BlockMap<F> {
        self.scale(&-F::one())
    }

    /// Block matrix `[[a, b], [c, d]]`. The row and column summand lists of
    /// the pieces must line up.
    pub fn from_quadrants(
        a: &BlockMap<F>,
        b: &BlockMap<F>,
        c: &BlockMap<F>,
        d: &BlockMap<F>,
    ) -> BlockMap<F> {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let rows: Vec<usize> = a.rows.iter().chain(&c.rows).copied().collect();
        let cols: Vec<usize> = a.cols.iter().chain(&b.cols).copied().collect();
        let mut out = BlockMap::zero(&rows, &cols);
        let (ar, ac) = (a.rows.len(), a.cols.len());
        for r in 0..rows.len() {
            for k in 0..cols.len() {
                let x = match (r < ar, k < ac) {
                    (true, true) => a.get(r, k),
                    (true, false) => b.get(r, k - ac),
                    (false, true) => c.get(r - ar, k),
                    (false, false) => d.get(r - ar, k - ac),
                };
                out.set(r, k, x.clone());
            }
        }
        out
    }

    /// Sub-block with the given row and column index ranges.
    pub fn sub_block(
        &self,
        rows: std::ops::Range<usize>,
        cols: std::ops::Range<usize>,
    ) -> BlockMap<F> {
        let mut out = BlockMap::zero(&self.rows[rows.clone()], &self.cols[cols.clone()]);
        for (i, r) in rows.enumerate() {
            for (j, c) in cols.clone().enumerate() {
                out.set(i, j, self.get(r, c).clone());
            }
        }
        out
    }

    /// Expansion to a matrix over the field using the path bases of the projectives.
    pub fn to_matrix(&self, alg: &PathAlgebra) -> Matrix<F> {
        let row_dims: Vec<usize> = self
            .rows
            .iter()
            .map(|&v| alg.projective_dimension(v))
            .collect();
        let col_dims: Vec<usize> = self
            .cols
            .iter()
            .map(|&v| alg.projective_dimension(v))
            .collect();
        let mut m = Matrix::zeros(row_dims.iter().sum(), col_dims.iter().sum());
        let mut r0 = 0;
        for (r, &rd) in row_dims.iter().enumerate() {
            let mut c0 = 0;
            for (c, &cd) in col_dims.iter().enumerate() {
                let x = self.get(r, c);
                if !x.is_zero() {
                    let block = alg
                        .element_to_matrix(x, self.cols[c], self.rows[r])
                        .expect("entries are idempotent-compatible");
                    for i in 0..rd {
                        for j in 0..cd {
                            m[(r0 + i, c0 + j)] = block[(i, j)].clone();
                        }
                    }
                }
                c0 += cd;
            }
            r0 += rd;
        }
        m
    }

    pub fn format_rows(&self, alg: &PathAlgebra) -> Vec<Vec<String>> {
        (0..self.rows.len())
            .map(|r| {
                (0..self.cols.len())
                    .map(|c| alg.format_element(self.get(r, c)))
                    .collect()
            })
            .collect()
    }
}
