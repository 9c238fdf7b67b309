//! Characteristic polynomials `det(XI - M)` without dividing by integers.
//!
//! Below dimension 8 the determinant is expanded by minors over subsets of
//! columns. Larger matrices are first brought to upper Hessenberg form by
//! similarity transforms and then expanded with the usual three-term style
//! recurrence on leading principal minors.

use super::{LinalgError, Matrix};
use crate::field::Field;
use crate::poly::{PolyRing, UniPoly};

const MINOR_EXPANSION_LIMIT: usize = 8;

impl<F: Field> Matrix<F> {
    pub fn char_poly(&self) -> Result<UniPoly<F::Elem>, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows(),
                cols: self.cols(),
            });
        }
        Ok(if self.rows() < MINOR_EXPANSION_LIMIT {
            char_poly_minors(self)
        } else {
            char_poly_hessenberg(self)
        })
    }
}

/// Laplace expansion along rows; `dp[mask]` is the determinant of the
/// `XI - M` block formed by the first `|mask|` rows and the columns in `mask`.
pub(crate) fn char_poly_minors<F: Field>(m: &Matrix<F>) -> UniPoly<F::Elem> {
    let f = m.field();
    let ring = PolyRing::new(f);
    let n = m.rows();
    assert!(n < 31, "minor expansion is exponential in the dimension");
    let entry = |i: usize, j: usize| {
        let c = f.neg(m.get(i, j));
        if i == j {
            UniPoly::new(f, vec![c, f.one()])
        } else {
            UniPoly::constant(f, c)
        }
    };
    let mut dp = vec![UniPoly::zero(); 1 << n];
    dp[0] = UniPoly::constant(f, f.one());
    for mask in 1usize..(1 << n) {
        let row = mask.count_ones() as usize - 1;
        let mut acc = UniPoly::zero();
        for j in 0..n {
            if mask >> j & 1 == 0 {
                continue;
            }
            let rest = mask & !(1 << j);
            if dp[rest].is_zero() {
                continue;
            }
            let term = ring.mul(&entry(row, j), &dp[rest]);
            let greater = (mask >> (j + 1)).count_ones();
            acc = if greater % 2 == 0 {
                ring.add(&acc, &term)
            } else {
                ring.sub(&acc, &term)
            };
        }
        dp[mask] = acc;
    }
    dp[(1 << n) - 1].clone()
}

/// Similarity reduction to upper Hessenberg form with pivot search.
fn hessenberg<F: Field>(m: &Matrix<F>) -> Matrix<F> {
    let f = m.field().clone();
    let n = m.rows();
    let mut h = m.clone();
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| !f.is_zero(h.get(i, j))) else {
            continue;
        };
        if piv != j + 1 {
            h.swap_rows(piv, j + 1);
            for r in 0..n {
                let (a, b) = (h.get(r, piv), h.get(r, j + 1));
                h.set(r, piv, b);
                h.set(r, j + 1, a);
            }
        }
        let inv = f.inv(h.get(j + 1, j)).expect("pivot is nonzero");
        for k in j + 2..n {
            let c = f.mul(h.get(k, j), inv);
            if f.is_zero(c) {
                continue;
            }
            // row_k -= c row_{j+1}, then col_{j+1} += c col_k.
            for col in 0..n {
                let v = f.sub(h.get(k, col), f.mul(c, h.get(j + 1, col)));
                h.set(k, col, v);
            }
            for r in 0..n {
                let v = f.add(h.get(r, j + 1), f.mul(c, h.get(r, k)));
                h.set(r, j + 1, v);
            }
        }
    }
    h
}

pub(crate) fn char_poly_hessenberg<F: Field>(m: &Matrix<F>) -> UniPoly<F::Elem> {
    let f = m.field();
    let ring = PolyRing::new(f);
    let n = m.rows();
    let h = hessenberg(m);
    let mut p: Vec<UniPoly<F::Elem>> = Vec::with_capacity(n + 1);
    p.push(UniPoly::constant(f, f.one()));
    for k in 1..=n {
        let diag = UniPoly::new(f, vec![f.neg(h.get(k - 1, k - 1)), f.one()]);
        let mut pk = ring.mul(&diag, &p[k - 1]);
        let mut sub_prod = f.one();
        for i in 1..k {
            sub_prod = f.mul(sub_prod, h.get(k - i, k - i - 1));
            if f.is_zero(sub_prod) {
                break;
            }
            let coef = f.mul(h.get(k - 1 - i, k - 1), sub_prod);
            pk = ring.sub(&pk, &ring.scale(&p[k - 1 - i], coef));
        }
        p.push(pk);
    }
    p.pop().expect("n + 1 entries")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{BinaryField, ExtField, PrimeField};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn diagonal_and_zero() {
        let f = PrimeField::new(7).unwrap();
        let ring = PolyRing::new(&f);
        let d = Matrix::from_fn(&f, 3, 3, |i, j| if i == j { [2, 3, 5][i] } else { 0 });
        assert_eq!(d.char_poly().unwrap(), ring.from_roots(&[2, 3, 5]));
        let z = Matrix::zeros(&f, 2, 2);
        assert_eq!(z.char_poly().unwrap().coeffs(), &[0, 0, 1]);
        assert!(Matrix::zeros(&f, 2, 3).char_poly().is_err());
    }

    fn companion<F: Field>(f: &F, poly: &UniPoly<F::Elem>) -> Matrix<F> {
        let n = poly.degree().unwrap();
        Matrix::from_fn(f, n, n, |i, j| {
            if j == n - 1 {
                f.neg(poly.coeffs()[i])
            } else if i == j + 1 {
                f.one()
            } else {
                f.zero()
            }
        })
    }

    #[test]
    fn companion_matrix_recovers_polynomial() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let f = BinaryField::new(12).unwrap();
        for n in 1..16 {
            let mut c: Vec<u128> = (0..n).map(|_| f.random(&mut rng)).collect();
            c.push(1);
            let poly = UniPoly::new(&f, c);
            assert_eq!(companion(&f, &poly).char_poly().unwrap(), poly);
        }
        let g = ExtField::new(3, 2).unwrap();
        for n in 1..12 {
            let mut c: Vec<u64> = (0..n).map(|_| g.random(&mut rng)).collect();
            c.push(1);
            let poly = UniPoly::new(&g, c);
            assert_eq!(companion(&g, &poly).char_poly().unwrap(), poly);
        }
    }

    #[test]
    fn both_methods_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let f2 = PrimeField::new(2).unwrap();
        let f5 = PrimeField::new(5).unwrap();
        let f16 = BinaryField::new(4).unwrap();
        for _ in 0..40 {
            let n = rng.gen_range(1..11);
            // Sparse matrices exercise the Hessenberg pivot search.
            let a = Matrix::from_fn(&f2, n, n, |_, _| (rng.gen_range(0..4) == 0) as u64);
            assert_eq!(char_poly_minors(&a), char_poly_hessenberg(&a));
            let b = Matrix::from_fn(&f5, n, n, |_, _| f5.random(&mut rng));
            assert_eq!(char_poly_minors(&b), char_poly_hessenberg(&b));
            let c = Matrix::from_fn(&f16, n, n, |_, _| {
                if rng.gen_bool(0.3) {
                    f16.random(&mut rng)
                } else {
                    0
                }
            });
            assert_eq!(char_poly_minors(&c), char_poly_hessenberg(&c));
        }
    }

    #[test]
    fn similarity_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let f = BinaryField::new(8).unwrap();
        for n in [3usize, 9, 14] {
            let a = Matrix::from_fn(&f, n, n, |_, _| f.random(&mut rng));
            let p = loop {
                let p = Matrix::from_fn(&f, n, n, |_, _| f.random(&mut rng));
                if p.is_invertible() {
                    break p;
                }
            };
            let conj = p.mul(&a).mul(&p.inverse().unwrap());
            assert_eq!(a.char_poly().unwrap(), conj.char_poly().unwrap());
        }
    }
}
