use std::fmt;

use super::scalar::Scalar;
use super::subspace::Subspace;
use super::{LinalgError, Vector};

/// Dense row-major matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Outcome of [`solve`]. An inconsistent system is a result, not an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Solvable { particular: Vector, kernel: Subspace },
    NoSolution,
}

impl Solution {
    pub fn particular(&self) -> Option<&Vector> {
        match self {
            Solution::Solvable { particular, .. } => Some(particular),
            Solution::NoSolution => None,
        }
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vector>) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(rows, cols)
    }

    /// Like [`Matrix::from_rows`] but with an explicit column count, so an
    /// empty row list still yields a `0 × cols` matrix.
    pub fn from_rows_with_cols(rows: Vec<Vector>, cols: usize) -> Result<Self, LinalgError> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LinalgError::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r);
        }
        Ok(Matrix {
            rows: nrows,
            cols,
            data,
        })
    }

    pub fn from_columns(columns: &[Vector], rows: usize) -> Result<Self, LinalgError> {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(LinalgError::DimensionMismatch {
                    expected: rows,
                    found: c.len(),
                });
            }
            for (i, x) in c.iter().enumerate() {
                if !x.is_zero() {
                    m[(i, j)] = x.clone();
                }
            }
        }
        Ok(m)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let vs = rows
            .iter()
            .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
            .collect();
        Matrix::from_rows(vs).expect("ragged literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Result<Vector, LinalgError> {
        if x.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(i).iter().zip(x) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let p = a * b;
                        out[(i, j)] += &p;
                    }
                }
            }
        }
        Ok(out)
    }

    /// In-place Gauss-Jordan reduction to reduced row echelon form.
    /// Returns the pivot columns; pivot rows are the first `pivots.len()` rows.
    pub fn rref(&mut self) -> Vec<usize> {
        self.rref_limited(self.cols)
    }

    /// RREF that only pivots in the first `limit` columns (the remaining
    /// columns are carried along, as for an augmented system).
    fn rref_limited(&mut self, limit: usize) -> Vec<usize> {
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..limit {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.data[i * cols + c].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = self.data[r * cols + c].recip().expect("nonzero pivot");
            let mut support = Vec::new();
            for j in c..cols {
                let x = &mut self.data[r * cols + j];
                if !x.is_zero() {
                    *x *= &inv;
                    support.push(j);
                }
            }
            let pivot_row: Vec<(usize, Scalar)> =
                support.iter().map(|&j| (j, self.data[r * cols + j].clone())).collect();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.data[i * cols + c].clone();
                if f.is_zero() {
                    continue;
                }
                for (j, v) in &pivot_row {
                    let t = &f * v;
                    self.data[i * cols + j] -= &t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Inverse of a square matrix, `None` if singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Scalar::one();
        }
        if aug.rref_limited(n).len() < n {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// `{x : Mx = 0}` as a canonical subspace.
    pub fn kernel(&self) -> Subspace {
        let mut m = self.clone();
        let pivots = m.rref();
        kernel_from_rref(&m, &pivots, self.cols)
    }

    /// Column space as a canonical subspace of `Q^rows`.
    pub fn image(&self) -> Subspace {
        let cols: Vec<Vector> = (0..self.cols).map(|j| self.column(j)).collect();
        Subspace::from_spanning(self.rows, cols).expect("column length")
    }
}

fn kernel_from_rref(m: &Matrix, pivots: &[usize], ncols: usize) -> Subspace {
    let mut is_pivot = vec![None; ncols];
    for (r, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(r);
    }
    let mut basis = Vec::new();
    for f in 0..ncols {
        if is_pivot[f].is_some() {
            continue;
        }
        let mut v = vec![Scalar::zero(); ncols];
        v[f] = Scalar::one();
        for (r, &c) in pivots.iter().enumerate() {
            let x = &m[(r, f)];
            if !x.is_zero() {
                v[c] = -x;
            }
        }
        basis.push(v);
    }
    Subspace::from_spanning(ncols, basis).expect("kernel vectors have ambient length")
}

/// Solves `M x = b`: a particular solution (free variables set to zero) and
/// the kernel of `M`, or [`Solution::NoSolution`].
pub fn solve(m: &Matrix, b: &[Scalar]) -> Result<Solution, LinalgError> {
    if b.len() != m.rows {
        return Err(LinalgError::DimensionMismatch {
            expected: m.rows,
            found: b.len(),
        });
    }
    let cols = m.cols + 1;
    let mut aug = Matrix::zeros(m.rows, cols);
    for i in 0..m.rows {
        for j in 0..m.cols {
            aug.data[i * cols + j] = m[(i, j)].clone();
        }
        aug.data[i * cols + m.cols] = b[i].clone();
    }
    let pivots = aug.rref_limited(m.cols);
    let rank = pivots.len();
    if (rank..m.rows).any(|i| !aug[(i, m.cols)].is_zero()) {
        return Ok(Solution::NoSolution);
    }
    let mut particular = vec![Scalar::zero(); m.cols];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = aug[(r, m.cols)].clone();
    }
    let kernel = kernel_from_rref(&aug, &pivots, m.cols);
    Ok(Solution::Solvable { particular, kernel })
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
