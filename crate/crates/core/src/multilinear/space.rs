use std::sync::Arc;

use super::poly::{restrict_last_coeffs, substitution_matrix};
use super::{MonomialIndex, MultilinearError, MultilinearPoly, Term};
use crate::field::{Field, PrimeField};
use crate::linalg::Matrix;

/// A linear space of reduced polynomials, kept as the nonzero rows of a
/// reduced row-echelon basis so that equal spaces have equal bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySpace {
    index: Arc<MonomialIndex>,
    basis: Matrix<PrimeField>,
}

impl PolySpace {
    /// Span of the rows of `generators`.
    pub fn span(index: Arc<MonomialIndex>, generators: &Matrix<PrimeField>) -> Self {
        assert_eq!(generators.cols(), index.len(), "generator width mismatch");
        Self {
            basis: generators.row_space_basis(),
            index,
        }
    }

    pub fn full(index: Arc<MonomialIndex>) -> Self {
        let basis = Matrix::identity(index.field(), index.len());
        Self { index, basis }
    }

    pub fn zero(index: Arc<MonomialIndex>) -> Self {
        let basis = Matrix::zeros(index.field(), 0, index.len());
        Self { index, basis }
    }

    /// All polynomials of the index vanishing on every point of `points`:
    /// the nullspace of the evaluation matrix whose rows are `x^{⊗≤bound}`.
    pub fn vanishing(
        index: Arc<MonomialIndex>,
        points: &[Vec<u64>],
    ) -> Result<Self, MultilinearError> {
        let f = index.field().clone();
        let rows = points
            .iter()
            .map(|x| index.tensor_power(x))
            .collect::<Result<Vec<_>, _>>()?;
        if rows.is_empty() {
            return Ok(Self::full(index));
        }
        let eval = Matrix::from_rows(&f, rows);
        Ok(Self::span(index, &eval.nullspace_basis()))
    }

    pub fn index(&self) -> &Arc<MonomialIndex> {
        &self.index
    }

    pub fn basis(&self) -> &Matrix<PrimeField> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn codim(&self) -> usize {
        self.index.len() - self.dim()
    }

    pub fn basis_polys(&self) -> Vec<MultilinearPoly> {
        (0..self.dim())
            .map(|i| {
                MultilinearPoly::new(self.index.clone(), self.basis.row(i).to_vec())
                    .expect("basis width matches index")
            })
            .collect()
    }

    /// JSON form: one term list per basis polynomial.
    pub fn to_terms(&self) -> Vec<Vec<Term>> {
        self.basis_polys()
            .iter()
            .map(MultilinearPoly::terms)
            .collect()
    }

    /// Membership test by reducing against the echelon basis.
    pub fn contains_coeffs(&self, coeffs: &[u64]) -> bool {
        let f = self.index.field();
        let mut v = coeffs.to_vec();
        for i in 0..self.dim() {
            let row = self.basis.row(i);
            let pivot = row.iter().position(|&c| c != 0).expect("nonzero basis row");
            let c = v[pivot];
            if c == 0 {
                continue;
            }
            for (x, &r) in v.iter_mut().zip(row) {
                *x = f.sub(*x, f.mul(c, r));
            }
        }
        v.iter().all(|&c| c == 0)
    }

    pub fn contains(&self, poly: &MultilinearPoly) -> bool {
        self.contains_coeffs(poly.coeffs())
    }

    /// `{ reduce(P(Mx + b)) : P in V }`.
    pub fn affine_substitute(
        &self,
        m: &Matrix<PrimeField>,
        b: &[u64],
    ) -> Result<Self, MultilinearError> {
        let t = substitution_matrix(&self.index, m, b)?;
        Ok(Self::span(self.index.clone(), &self.basis.mul(&t)))
    }

    /// `{ P(X_1, .., X_{m-1}, c) : P in V }` over the first `m - 1`
    /// variables.
    pub fn restrict_last(&self, c: u64) -> Result<Self, MultilinearError> {
        let m = self.index.m();
        if m == 0 {
            return Err(MultilinearError::NoVariables);
        }
        let target = Arc::new(MonomialIndex::new(
            m - 1,
            self.index.bound(),
            self.index.p(),
        )?);
        self.restrict_last_into(target, c)
    }

    /// As [`PolySpace::restrict_last`] with a prebuilt target index.
    pub fn restrict_last_into(
        &self,
        target: Arc<MonomialIndex>,
        c: u64,
    ) -> Result<Self, MultilinearError> {
        let m = self.index.m();
        if m == 0 {
            return Err(MultilinearError::NoVariables);
        }
        assert!(target.m() + 1 == m && target.bound() == self.index.bound());
        let f = self.index.field().clone();
        let rows: Vec<Vec<u64>> = (0..self.dim())
            .map(|i| restrict_last_coeffs(&self.index, &target, self.basis.row(i), c % f.p()))
            .collect();
        let gens = if rows.is_empty() {
            Matrix::zeros(&f, 0, target.len())
        } else {
            Matrix::from_rows(&f, rows)
        };
        Ok(Self::span(target, &gens))
    }

    /// The restriction `X_m = 0` of the vanishing-space lemma over `F_2`.
    pub fn restrict_last_zero(&self) -> Result<Self, MultilinearError> {
        self.restrict_last(0)
    }

    /// Same substitution over `F_p`; kept as a separate entry point because
    /// its correctness argument differs from the `F_2` case.
    pub fn restrict_last_zero_fp(&self) -> Result<Self, MultilinearError> {
        self.restrict_last(0)
    }

    /// Whether every basis polynomial vanishes at `x`.
    pub fn vanishes_at(&self, x: &[u64]) -> Result<bool, MultilinearError> {
        self.index.check_point(x)?;
        let tp = self.index.tensor_power(x)?;
        let f = self.index.field();
        Ok((0..self.dim()).all(|i| {
            self.basis
                .row(i)
                .iter()
                .zip(&tp)
                .fold(0u64, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
                == 0
        }))
    }
}
