use crate::field::Field;
use crate::linalg::Matrix;
use crate::multilinear::MonomialIndex;
use crate::rm::{RmError, Syndrome};

/// The 3-tensor `sum_e y_e e^{⊗≤r} ⊗ e^{⊗≤r} ⊗ e^{⊗≤1}` read off a syndrome.
///
/// The first two axes follow the degree-`r` prefix of the syndrome index;
/// the third is `(1, X_1, .., X_m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor3 {
    nr: usize,
    m: usize,
    /// Row-major over `(M, M', M'')`.
    data: Vec<u64>,
}

impl Tensor3 {
    /// `index` is the syndrome index (degree bound `2r + 1`).
    pub fn from_syndrome(s: &Syndrome, index: &MonomialIndex) -> Result<Self, RmError> {
        let params = s.params();
        if index.len() != params.syndrome_len() || index.m() != params.m || index.p() != params.p {
            return Err(RmError::SyndromeShape);
        }
        let nr = index.prefix_len(params.r as u32);
        let m = params.m;
        let third = third_axis_codes(index);
        let entries = s.entries();
        let mut data = Vec::with_capacity(nr * nr * (m + 1));
        for i in 0..nr {
            for j in 0..nr {
                let ij = index.mul_codes(index.code(i), index.code(j));
                for &c in &third {
                    let pos = index
                        .position(index.mul_codes(ij, c))
                        .expect("degree at most 2r + 1");
                    data.push(entries[pos]);
                }
            }
        }
        Ok(Self { nr, m, data })
    }

    /// `(|M_r^m|, |M_r^m|, m + 1)`.
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.nr, self.nr, self.m + 1)
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> u64 {
        self.data[(i * self.nr + j) * (self.m + 1) + k]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// `sum_k S[., ., k] w[k]` over an extension of the base field.
    pub fn flatten<F: Field>(&self, field: &F, w: &[F::Elem]) -> Matrix<F> {
        assert_eq!(w.len(), self.m + 1, "flattening vector length");
        Matrix::from_fn(field, self.nr, self.nr, |i, j| {
            (0..=self.m).fold(field.zero(), |acc, k| {
                let v = self.get(i, j, k);
                if v == 0 {
                    acc
                } else {
                    field.add(acc, field.mul(field.from_int(v), w[k]))
                }
            })
        })
    }
}

/// Codes of `1, X_1, .., X_m`.
pub(crate) fn third_axis_codes(index: &MonomialIndex) -> Vec<u64> {
    let p = index.p();
    std::iter::once(0)
        .chain((0..index.m()).map(|j| p.pow(j as u32)))
        .collect()
}

/// Flattening vectors with the two matrices they produce.
#[derive(Debug, Clone)]
pub struct FlatteningPair<F: Field> {
    pub a: Vec<F::Elem>,
    pub b: Vec<F::Elem>,
    pub sa: Matrix<F>,
    pub sb: Matrix<F>,
}

impl<F: Field> FlatteningPair<F> {
    pub fn new(field: &F, tensor: &Tensor3, a: Vec<F::Elem>, b: Vec<F::Elem>) -> Self {
        let sa = tensor.flatten(field, &a);
        let sb = tensor.flatten(field, &b);
        Self { a, b, sa, sb }
    }
}

/// `<w, (1, x)>` with the coordinates of `x` lifted into the field.
pub fn pairing<F: Field>(field: &F, w: &[F::Elem], x: &[u64]) -> F::Elem {
    assert_eq!(w.len(), x.len() + 1);
    x.iter().zip(&w[1..]).fold(w[0], |acc, (&c, &wj)| {
        if c == 0 {
            acc
        } else {
            field.add(acc, field.mul(field.from_int(c), wj))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::BinaryField;
    use crate::rm::{CodeParams, ErrorSet};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn tensor_of(params: CodeParams, e: &ErrorSet, mags: &[u64]) -> (Tensor3, MonomialIndex) {
        let index = params.syndrome_index().unwrap();
        let s = Syndrome::from_weighted_errors(&params, e, mags).unwrap();
        (Tensor3::from_syndrome(&s, &index).unwrap(), index)
    }

    #[test]
    fn zero_syndrome_gives_zero_tensor() {
        let params = CodeParams::binary(6, 1).unwrap();
        let (t, _) = tensor_of(params, &ErrorSet::empty(6, 2), &[]);
        assert!(t.is_zero());
        assert_eq!(t.dims(), (7, 7, 7));
    }

    #[test]
    fn entries_match_direct_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for (p, t) in [(2u64, 1usize), (2, 5), (3, 4)] {
            let params = CodeParams::new(6, 1, p).unwrap();
            let idx: Vec<u64> = (0..t).map(|i| (i as u64 * 97 + 13) % params.n()).collect();
            let e = ErrorSet::from_indices(6, p, &idx).unwrap();
            let mags: Vec<u64> = (0..t).map(|_| rng.gen_range(1..p)).collect();
            let (tensor, index) = tensor_of(params, &e, &mags);
            let f = params.field();
            let nr = index.prefix_len(1);
            let third = third_axis_codes(&index);
            for i in 0..nr {
                for j in 0..nr {
                    for (k, &ck) in third.iter().enumerate() {
                        let direct = e.points().iter().zip(&mags).fold(0, |acc, (x, &y)| {
                            let v = index.eval_code(index.code(i), x)
                                * index.eval_code(index.code(j), x)
                                * index.eval_code(ck, x);
                            f.add(acc, f.mul(y, v % p))
                        });
                        assert_eq!(tensor.get(i, j, k), direct);
                    }
                }
            }
        }
    }

    #[test]
    fn flattening_is_x_a_xt() {
        // S^a = X diag(<a, e^{⊗≤1}>) X^T.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let params = CodeParams::binary(6, 1).unwrap();
        let e = ErrorSet::from_indices(6, 2, &[3, 20, 41, 62]).unwrap();
        let (tensor, index) = tensor_of(params, &e, &[1; 4]);
        let f = BinaryField::new(24).unwrap();
        let a: Vec<u128> = (0..7).map(|_| f.random(&mut rng)).collect();
        let sa = tensor.flatten(&f, &a);
        let nr = index.prefix_len(1);
        let x = Matrix::from_fn(&f, nr, 4, |i, j| {
            f.from_int(index.eval_code(index.code(i), &e.points()[j]))
        });
        let diag = Matrix::from_fn(&f, 4, 4, |i, j| {
            if i == j {
                pairing(&f, &a, &e.points()[i])
            } else {
                0
            }
        });
        assert_eq!(sa, x.mul(&diag).mul(&x.transpose()));
    }
}
