//! Dense matrices over an exact field.

use std::fmt;
use std::ops::{Index, IndexMut};

use thiserror::Error;

use super::field::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinearError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("subspace not contained")]
    NotContained,
}

/// Row-major dense matrix. `data.len() == rows * cols` always holds.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// Result of Gaussian elimination.
#[derive(Debug, Clone)]
pub struct Rref<F> {
    pub matrix: Matrix<F>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    /// Builds from row vectors. All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<F>>) -> Result<Self, LinearError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(LinearError::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: n,
            cols,
            data,
        })
    }

    /// Builds from column vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<F>]) -> Result<Self, LinearError> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(LinearError::DimensionMismatch(format!(
                    "column {j} has {} entries, expected {rows}",
                    c.len()
                )));
            }
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<F>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix<F>) -> Result<Matrix<F>, LinearError> {
        if self.cols != rhs.rows {
            return Err(LinearError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>, LinearError> {
        if v.len() != self.cols {
            return Err(LinearError::DimensionMismatch(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &Matrix<F>) -> Result<Matrix<F>, LinearError> {
        if self.rows != rhs.rows {
            return Err(LinearError::DimensionMismatch(format!(
                "hstack of {} and {} rows",
                self.rows, rhs.rows
            )));
        }
        let cols = self.cols + rhs.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(rhs.row(i));
        }
        Ok(Matrix {
            rows: self.rows,
            cols,
            data,
        })
    }

    /// Reduced row echelon form. Pivots are chosen as the first nonzero
    /// entry at or below the current row, so results are reproducible.
    pub fn rref(&self) -> Rref<F> {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(p, r);
            let inv = a[(r, c)].inverse().expect("pivot is nonzero");
            for j in c..a.cols {
                let v = a[(r, j)].clone();
                a[(r, j)] = v * inv.clone();
            }
            for i in 0..a.rows {
                if i == r || a[(i, c)].is_zero() {
                    continue;
                }
                let factor = a[(i, c)].clone();
                for j in c..a.cols {
                    if a[(r, j)].is_zero() {
                        continue;
                    }
                    let v = a[(i, j)].clone() - factor.clone() * a[(r, j)].clone();
                    a[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            matrix: a,
            rank: r,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the null space, returned as the columns of a `cols × (cols − rank)` matrix.
    /// One basis vector per free column, in increasing column order.
    pub fn kernel_basis(&self) -> Matrix<F> {
        let Rref { matrix, pivots, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut k = Matrix::zeros(self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            k[(fc, j)] = F::one();
            for (row, &pc) in pivots.iter().enumerate() {
                k[(pc, j)] = -matrix[(row, fc)].clone();
            }
        }
        k
    }

    /// Some `x` with `self · x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[F]) -> Result<Option<Vec<F>>, LinearError> {
        if b.len() != self.rows {
            return Err(LinearError::DimensionMismatch(format!(
                "right-hand side has {} entries, matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let column = Matrix::from_columns(self.rows, &[b.to_vec()])?;
        let augmented = self.hstack(&column)?;
        let Rref { matrix, pivots, .. } = augmented.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![F::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = matrix[(row, self.cols)].clone();
        }
        Ok(Some(x))
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }
}

/// `rank(ambient) − rank(sub)`, after checking that the column space of
/// `sub` lies inside the column space of `ambient`.
pub fn quotient_dimension<F: Field>(
    sub: &Matrix<F>,
    ambient: &Matrix<F>,
) -> Result<usize, LinearError> {
    if sub.cols() > 0 && ambient.cols() > 0 && sub.rows() != ambient.rows() {
        return Err(LinearError::DimensionMismatch(format!(
            "sub has {} rows, ambient has {}",
            sub.rows(),
            ambient.rows()
        )));
    }
    let ambient_rank = ambient.rank();
    let sub_rank = sub.rank();
    if sub_rank == 0 {
        return Ok(ambient_rank);
    }
    if ambient.cols() == 0 || ambient.hstack(sub)?.rank() != ambient_rank {
        return Err(LinearError::NotContained);
    }
    Ok(ambient_rank - sub_rank)
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.data[i * self.cols..(i + 1) * self.cols]
                .iter()
                .map(|x| format!("{x:?}"))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linear::Fp;

    type F5 = Fp<5>;

    fn m5(rows: &[&[i64]]) -> Matrix<F5> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&v| F5::new(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = Matrix::<F5>::identity(3);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivots, vec![0, 1, 2]);

        let z = Matrix::<F5>::zeros(2, 4);
        let r = z.rref();
        assert_eq!(r.matrix, z);
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn rref_scalar_multiple_rows() {
        // 3·[2,4] = [6,12] = [1,2] over F_5.
        let m = m5(&[&[2, 4], &[1, 2]]);
        assert_eq!(m5(&[&[3]]).mul(&m5(&[&[2, 4]])).unwrap(), m5(&[&[1, 2]]));
        let r = m.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.matrix, m5(&[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::<F5>::identity(3).kernel_basis().cols(), 0);
        let k = Matrix::<F5>::zeros(3, 3).kernel_basis();
        assert_eq!(k, Matrix::identity(3));
        // [[1,1]] over F_5: kernel spanned by (1, 4) up to scalar.
        let k = m5(&[&[1, 1]]).kernel_basis();
        assert_eq!(k.cols(), 1);
        let v = k.column(0);
        assert_eq!(v[1], F5::new(1));
        assert_eq!(v[0], F5::new(4));
        assert!(m5(&[&[1, 1]]).mul(&k).unwrap().is_zero());
    }

    #[test]
    fn solve_examples() {
        let b = vec![F5::new(3), F5::new(1)];
        assert_eq!(
            Matrix::<F5>::identity(2).solve(&b).unwrap(),
            Some(b.clone())
        );
        assert_eq!(Matrix::<F5>::zeros(2, 2).solve(&b).unwrap(), None);
        // 1 + 2·1 = 3, 1 = 1.
        let x = m5(&[&[1, 2], &[0, 1]]).solve(&b).unwrap().unwrap();
        assert_eq!(x, vec![F5::new(1), F5::new(1)]);
        assert!(matches!(
            Matrix::<F5>::identity(3).solve(&b),
            Err(LinearError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn quotient_dimension_examples() {
        let amb = Matrix::<F5>::identity(3);
        assert_eq!(quotient_dimension(&amb, &amb).unwrap(), 0);
        assert_eq!(quotient_dimension(&Matrix::zeros(3, 0), &amb).unwrap(), 3);
        let sub = m5(&[&[1], &[1], &[0]]);
        assert_eq!(quotient_dimension(&sub, &amb).unwrap(), 2);
        let line = m5(&[&[1], &[0], &[0]]);
        let other = m5(&[&[0], &[1], &[0]]);
        assert_eq!(
            quotient_dimension(&other, &line),
            Err(LinearError::NotContained)
        );
    }
}
