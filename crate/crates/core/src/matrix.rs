//! Square and rectangular matrices over a cyclotomic field with exact
//! Gaussian elimination.

use std::fmt;
use std::sync::Arc;

use crate::cyclo::{CycNum, CyclotomicField};
use crate::error::{Error, Result};

/// Row-major matrix over `Q(zeta_N)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<CycNum>,
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vec<CycNum>>) -> Result<Matrix> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if nrows == 0 || ncols == 0 {
            return Err(Error::Input("empty matrix".into()));
        }
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Input("ragged matrix rows".into()));
        }
        let order = rows[0][0].field().order();
        let entries: Vec<CycNum> = rows.into_iter().flatten().collect();
        if let Some(bad) = entries.iter().find(|e| e.field().order() != order) {
            return Err(Error::FieldMismatch {
                left: order,
                right: bad.field().order(),
            });
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            entries,
        })
    }

    pub fn identity(n: usize, field: &Arc<CyclotomicField>) -> Matrix {
        Self::scalar(n, &CycNum::one(field))
    }

    pub fn scalar(n: usize, value: &CycNum) -> Matrix {
        let zero = CycNum::zero(value.field());
        let entries = (0..n * n)
            .map(|k| if k / n == k % n { value.clone() } else { zero.clone() })
            .collect();
        Matrix {
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn diagonal(values: Vec<CycNum>) -> Matrix {
        let n = values.len();
        let zero = CycNum::zero(values[0].field());
        let mut m = Self::scalar(n, &zero);
        for (i, v) in values.into_iter().enumerate() {
            m.entries[i * n + i] = v;
        }
        m
    }

    /// Matrix whose columns are `columns`.
    pub fn from_columns(columns: &[Vec<CycNum>]) -> Result<Matrix> {
        let n = columns.first().map_or(0, Vec::len);
        let rows = (0..n)
            .map(|i| columns.iter().map(|c| c[i].clone()).collect())
            .collect();
        Matrix::from_rows(rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        self.entries[0].field()
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.entries[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> Vec<CycNum> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[CycNum] {
        &self.entries
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Input(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let field = self.field();
        if field.order() != other.field().order() {
            return Err(Error::FieldMismatch {
                left: field.order(),
                right: other.field().order(),
            });
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = CycNum::zero(field);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                entries.push(acc);
            }
        }
        Ok(Matrix {
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.checked_mul(other).expect("matrix shape or field mismatch")
    }

    pub fn pow(&self, mut exp: u64) -> Matrix {
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows, self.field());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn trace(&self) -> CycNum {
        (0..self.rows.min(self.cols)).fold(CycNum::zero(self.field()), |acc, i| {
            &acc + self.get(i, i)
        })
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diagonal_entries(&self) -> Vec<CycNum> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }

    pub fn embed(&self, target: &Arc<CyclotomicField>) -> Result<Matrix> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .map(|e| e.embed(target))
                .collect::<Result<_>>()?,
        })
    }

    /// Reduced row echelon form together with the pivot column of each
    /// nonzero row.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inverse().expect("pivot is nonzero");
            for j in 0..m.cols {
                let v = m.get(row, j) * &inv;
                m.set(row, j, v);
            }
            for i in 0..m.rows {
                if i == row || m.get(i, col).is_zero() {
                    continue;
                }
                let factor = m.get(i, col).clone();
                for j in 0..m.cols {
                    let v = m.get(i, j) - &(&factor * m.get(row, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, one vector per free column in increasing
    /// column order, each with a 1 in its free coordinate.
    pub fn kernel(&self) -> Vec<Vec<CycNum>> {
        let (r, pivots) = self.rref();
        let field = self.field();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![CycNum::zero(field); self.cols];
                v[f] = CycNum::one(field);
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, f);
                }
                v
            })
            .collect()
    }

    pub fn determinant(&self) -> CycNum {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut m = self.clone();
        let field = self.field().clone();
        let mut det = CycNum::one(&field);
        for col in 0..m.cols {
            let Some(p) = (col..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                return CycNum::zero(&field);
            };
            if p != col {
                m.swap_rows(col, p);
                det = -det;
            }
            let pivot = m.get(col, col).clone();
            det = &det * &pivot;
            let inv = pivot.inverse().expect("pivot is nonzero");
            for i in col + 1..m.rows {
                if m.get(i, col).is_zero() {
                    continue;
                }
                let factor = m.get(i, col) * &inv;
                for j in col..m.cols {
                    let v = m.get(i, j) - &(&factor * m.get(col, j));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let id = Matrix::identity(n, self.field());
        let mut aug_rows = Vec::with_capacity(n);
        for i in 0..n {
            let mut row: Vec<CycNum> = (0..n).map(|j| self.get(i, j).clone()).collect();
            row.extend((0..n).map(|j| id.get(i, j).clone()));
            aug_rows.push(row);
        }
        let (r, pivots) = Matrix::from_rows(aug_rows).ok()?.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let rows = (0..n)
            .map(|i| (n..2 * n).map(|j| r.get(i, j).clone()).collect())
            .collect();
        Matrix::from_rows(rows).ok()
    }

    fn set(&mut self, i: usize, j: usize, v: CycNum) {
        self.entries[i * self.cols + j] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}
