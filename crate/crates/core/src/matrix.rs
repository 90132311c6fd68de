//! Matrix containers shared by the transforms, the oracle and the eigensolver.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Square complex matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    dim: usize,
    data: Vec<Complex64>,
}

impl DenseOperator {
    pub fn zeros(dim: usize) -> Self {
        DenseOperator {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_row_major(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::domain(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                data.len()
            )));
        }
        Ok(DenseOperator { dim, data })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::domain("matrix rows must all have length equal to the row count"));
            }
            data.extend(row.iter().map(|&x| Complex64::new(x, 0.0)));
        }
        Ok(DenseOperator { dim, data })
    }

    pub fn diagonal(values: &[Complex64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<Complex64> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    /// Upper-left `n x n` block.
    pub fn leading_block(&self, n: usize) -> Result<Self> {
        if n > self.dim {
            return Err(Error::domain(format!(
                "block size {n} exceeds matrix dimension {}",
                self.dim
            )));
        }
        let mut out = Self::zeros(n);
        for i in 0..n {
            out.data[i * n..(i + 1) * n].copy_from_slice(&self.row(i)[..n]);
        }
        Ok(out)
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch in matmul");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim, "dimension mismatch in matrix-vector product");
        (0..self.dim)
            .map(|i| self.row(i).iter().zip(v).map(|(a, x)| a * x).sum())
            .collect()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Largest elementwise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|z| **z != Complex64::new(0.0, 0.0)).count()
    }
}

impl std::ops::Index<(usize, usize)> for DenseOperator {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseOperator {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

/// Whether every entry of a matrix is real.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    Real,
    Complex,
}

/// One stored entry of a sparse matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triplet {
    pub row: usize,
    pub col: usize,
    pub value: Complex64,
}

/// An `n x n` input matrix, dense or in coordinate (COO) form.
#[derive(Debug, Clone, PartialEq)]
pub enum InputMatrix {
    Dense(DenseOperator),
    Sparse { dim: usize, entries: Vec<Triplet> },
}

impl InputMatrix {
    pub fn dense(m: DenseOperator) -> Result<Self> {
        if m.dim() == 0 {
            return Err(Error::domain("matrix dimension must be at least 1"));
        }
        Ok(InputMatrix::Dense(m))
    }

    /// Builds a COO matrix. Positions must be in range and unique.
    pub fn sparse(dim: usize, mut entries: Vec<Triplet>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::domain("matrix dimension must be at least 1"));
        }
        for t in &entries {
            if t.row >= dim || t.col >= dim {
                return Err(Error::domain(format!(
                    "entry ({}, {}) out of range for dimension {dim}",
                    t.row, t.col
                )));
            }
        }
        entries.sort_by_key(|t| (t.row, t.col));
        if let Some(w) = entries.windows(2).find(|w| (w[0].row, w[0].col) == (w[1].row, w[1].col)) {
            return Err(Error::domain(format!(
                "duplicate entry at ({}, {})",
                w[0].row, w[0].col
            )));
        }
        Ok(InputMatrix::Sparse { dim, entries })
    }

    pub fn dim(&self) -> usize {
        match self {
            InputMatrix::Dense(m) => m.dim(),
            InputMatrix::Sparse { dim, .. } => *dim,
        }
    }

    pub fn field(&self) -> Field {
        let real = match self {
            InputMatrix::Dense(m) => m.as_slice().iter().all(|z| z.im == 0.0),
            InputMatrix::Sparse { entries, .. } => entries.iter().all(|t| t.value.im == 0.0),
        };
        if real {
            Field::Real
        } else {
            Field::Complex
        }
    }

    /// Visits every stored entry, including explicit zeros of a dense matrix.
    pub fn for_each_entry(&self, mut f: impl FnMut(usize, usize, Complex64)) {
        match self {
            InputMatrix::Dense(m) => {
                let n = m.dim();
                for (k, &v) in m.as_slice().iter().enumerate() {
                    f(k / n, k % n, v);
                }
            }
            InputMatrix::Sparse { entries, .. } => {
                for t in entries {
                    f(t.row, t.col, t.value);
                }
            }
        }
    }

    /// Count of entries that are not exactly zero.
    pub fn nonzero_count(&self) -> usize {
        let mut count = 0;
        self.for_each_entry(|_, _, v| {
            if v != Complex64::new(0.0, 0.0) {
                count += 1;
            }
        });
        count
    }

    pub fn to_dense(&self) -> DenseOperator {
        match self {
            InputMatrix::Dense(m) => m.clone(),
            InputMatrix::Sparse { dim, entries } => {
                let mut m = DenseOperator::zeros(*dim);
                for t in entries {
                    m[(t.row, t.col)] = t.value;
                }
                m
            }
        }
    }

    /// COO view keeping only nonzero entries.
    pub fn to_sparse(&self) -> InputMatrix {
        let mut entries = Vec::new();
        self.for_each_entry(|row, col, value| {
            if value != Complex64::new(0.0, 0.0) {
                entries.push(Triplet { row, col, value });
            }
        });
        InputMatrix::Sparse {
            dim: self.dim(),
            entries,
        }
    }
}

impl From<DenseOperator> for InputMatrix {
    fn from(m: DenseOperator) -> Self {
        InputMatrix::Dense(m)
    }
}
