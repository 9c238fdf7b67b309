use super::{LinalgError, Matrix};
use crate::field::Field;
use crate::poly::berlekamp_roots;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Eigenpair<E> {
    pub value: E,
    /// Scaled so that its first nonzero entry is 1.
    pub vector: Vec<E>,
}

impl<F: Field> Matrix<F> {
    /// Eigenpairs of a matrix whose characteristic polynomial splits into
    /// distinct linear factors over the field, sorted by eigenvalue.
    pub fn eigen_decompose(&self) -> Result<Vec<Eigenpair<F::Elem>>, LinalgError> {
        let n = self.rows();
        let cp = self.char_poly()?;
        let roots = berlekamp_roots(self.field(), &cp);
        if !roots.splits_simply() {
            return Err(LinalgError::SpectrumNotSimple {
                distinct: roots.roots.len(),
                dim: n,
            });
        }
        let f = self.field();
        roots
            .distinct_roots()
            .into_iter()
            .map(|value| {
                let shifted = self.sub(&Matrix::identity(f, n).scale(value));
                let ns = shifted.nullspace_basis();
                // A simple eigenvalue has a one-dimensional eigenspace.
                if ns.rows() != 1 {
                    return Err(LinalgError::SpectrumNotSimple {
                        distinct: roots.roots.len(),
                        dim: n,
                    });
                }
                let mut vector = ns.row(0).to_vec();
                let lead = *vector
                    .iter()
                    .find(|&&x| !f.is_zero(x))
                    .expect("eigenvector is nonzero");
                let inv = f.inv(lead).expect("nonzero");
                for x in vector.iter_mut() {
                    *x = f.mul(*x, inv);
                }
                Ok(Eigenpair { value, vector })
            })
            .collect()
    }
}
