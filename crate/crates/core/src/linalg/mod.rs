//! Dense linear algebra over finite fields.
//!
//! [`Matrix`] stores elements row-major for any [`Field`]. Elimination over
//! `F_2` is routed through the bit-packed [`BitMatrix`]. Pivots are chosen
//! column by column, taking the lowest row with a nonzero entry, so every
//! result is deterministic.

mod bitmatrix;
mod charpoly;
mod eigen;

pub use bitmatrix::BitMatrix;
pub use eigen::Eigenpair;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Field, FieldDescriptor};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("spectrum not simple over field: {distinct} distinct roots for dimension {dim}")]
    SpectrumNotSimple { distinct: usize, dim: usize },
}

/// Strictly increasing row or column indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    /// `None` unless the indices are strictly increasing.
    pub fn new(indices: Vec<usize>) -> Option<Self> {
        indices
            .windows(2)
            .all(|w| w[0] < w[1])
            .then_some(Self(indices))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }
}

#[derive(Clone)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> std::fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

impl<F: Field> PartialEq for Matrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl<F: Field> Eq for Matrix<F> {}

/// Output of [`Matrix::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref<F: Field> {
    pub matrix: Matrix<F>,
    pub rank: usize,
    pub pivots: IndexSet,
}

/// JSON debugging dump. Extension-field entries are written as their
/// integer index (base-`p` digits are the coefficients, lowest first).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDump {
    pub field: FieldDescriptor,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<u128>>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Self {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(
        field: &F,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> F::Elem,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows(field: &F, rows: Vec<Vec<F::Elem>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let n = rows.len();
        Self {
            field: field.clone(),
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Rows of small integers mapped into the prime subfield.
    pub fn from_int_rows(field: &F, rows: &[&[u64]]) -> Self {
        Self::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&v| field.from_int(v)).collect())
                .collect(),
        )
    }

    pub fn field(&self) -> &F {
        &self.field
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

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> F::Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [F::Elem] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        let z = self.field.zero();
        self.data.iter().all(|&x| x == z)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Entrywise image under `f` in another field.
    pub fn map<G: Field>(&self, target: &G, f: impl Fn(F::Elem) -> G::Elem) -> Matrix<G> {
        Matrix {
            field: target.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                let src = other.row(k);
                let dst = out.row_mut(i);
                for (d, &b) in dst.iter_mut().zip(src) {
                    *d = f.add(*d, f.mul(a, b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        Self {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        Self {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: F::Elem) -> Self {
        let f = &self.field;
        Self {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// Submatrix on the given rows and columns (in the given order).
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(&self.field, rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j])
        })
    }

    /// Rows stacked below `self`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Self {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn to_bits(&self) -> BitMatrix {
        let mut b = BitMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self.field.is_zero(self.get(i, j)) {
                    b.set(i, j, true);
                }
            }
        }
        b
    }

    fn from_bits(field: &F, b: &BitMatrix) -> Self {
        let (zero, one) = (field.zero(), field.one());
        Self::from_fn(field, b.rows(), b.cols(), |i, j| {
            if b.get(i, j) {
                one
            } else {
                zero
            }
        })
    }

    /// Reduced row-echelon form.
    pub fn rref(&self) -> Rref<F> {
        if self.field.is_gf2() {
            let mut b = self.to_bits();
            let pivots = b.rref_in_place();
            return Rref {
                matrix: Self::from_bits(&self.field, &b),
                rank: pivots.len(),
                pivots: IndexSet(pivots),
            };
        }
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(pr) = (rank..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            m.swap_rows(pr, rank);
            let inv = f.inv(m.get(rank, c)).expect("pivot is nonzero");
            for x in m.row_mut(rank)[c..].iter_mut() {
                *x = f.mul(*x, inv);
            }
            for i in 0..m.rows {
                let factor = m.get(i, c);
                if i == rank || f.is_zero(factor) {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(rank, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            rank += 1;
        }
        Rref {
            matrix: m,
            rank,
            pivots: IndexSet(pivots),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        if self.field.is_gf2() {
            return self.to_bits().rank();
        }
        self.rref().rank
    }

    /// Nonzero rows of the reduced row-echelon form.
    pub fn row_space_basis(&self) -> Self {
        let r = self.rref();
        let rows: Vec<usize> = (0..r.rank).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        r.matrix.select(&rows, &cols)
    }

    /// Basis of `{x : Mx = 0}` as the rows of the result, one row per free
    /// column (`x_free = 1`, pivots solved for).
    pub fn nullspace_basis(&self) -> Self {
        let f = &self.field;
        let r = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|&c| !r.pivots.contains(c)).collect();
        let mut basis = Self::zeros(f, free.len(), self.cols);
        for (bi, &fc) in free.iter().enumerate() {
            basis.set(bi, fc, f.one());
            for (pi, pc) in r.pivots.iter().enumerate() {
                basis.set(bi, pc, f.neg(r.matrix.get(pi, fc)));
            }
        }
        debug_assert_eq!(basis.rows + r.rank, self.cols);
        basis
    }

    /// Rows `K` and columns `L` with `M[K, L]` invertible and
    /// `|K| = |L| = rank(M)`: the greedy pivots of `rref(M^T)` and `rref(M)`.
    pub fn full_rank_submatrix(&self) -> (IndexSet, IndexSet) {
        let l = self.rref().pivots;
        let k = self.transpose().rref().pivots;
        debug_assert_eq!(k.len(), l.len());
        (k, l)
    }

    /// Some `x` with `Mx = b`, free variables set to zero, or `None` when
    /// the system is inconsistent.
    pub fn solve(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let f = &self.field;
        let aug = Self::from_fn(f, self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                b[i]
            }
        });
        let r = aug.rref();
        if r.pivots.contains(self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (i, c) in r.pivots.iter().enumerate() {
            x[c] = r.matrix.get(i, self.cols);
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let f = &self.field;
        let aug = Self::from_fn(f, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j)
            } else if j - n == i {
                f.one()
            } else {
                f.zero()
            }
        });
        let r = aug.rref();
        if r.rank < n || r.pivots.as_slice()[n - 1] != n - 1 {
            return None;
        }
        let rows: Vec<usize> = (0..n).collect();
        let cols: Vec<usize> = (n..2 * n).collect();
        Some(r.matrix.select(&rows, &cols))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn dump(&self) -> MatrixDump {
        MatrixDump {
            field: self.field.descriptor(),
            rows: self.rows,
            cols: self.cols,
            data: (0..self.rows)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .map(|&x| self.field.index_of(x))
                        .collect()
                })
                .collect(),
        }
    }
}
