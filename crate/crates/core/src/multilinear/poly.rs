use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Monomial, MonomialIndex, MultilinearError};
use crate::field::{Field, PrimeField};
use crate::linalg::Matrix;

/// Reduced polynomial with coefficients aligned to a [`MonomialIndex`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultilinearPoly {
    index: Arc<MonomialIndex>,
    coeffs: Vec<u64>,
}

/// One `(exponents, coefficient)` pair of the JSON form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term(pub Vec<u32>, pub u64);

impl MultilinearPoly {
    pub fn new(index: Arc<MonomialIndex>, coeffs: Vec<u64>) -> Result<Self, MultilinearError> {
        if coeffs.len() != index.len() {
            return Err(MultilinearError::DimensionMismatch {
                expected: index.len(),
                got: coeffs.len(),
            });
        }
        let p = index.p();
        Ok(Self {
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
            index,
        })
    }

    pub fn zero(index: Arc<MonomialIndex>) -> Self {
        let n = index.len();
        Self {
            index,
            coeffs: vec![0; n],
        }
    }

    pub fn constant(index: Arc<MonomialIndex>, c: u64) -> Self {
        let mut p = Self::zero(index);
        p.coeffs[0] = c % p.index.p();
        p
    }

    /// `X_{j+1}`, for `j < m`.
    pub fn variable(index: Arc<MonomialIndex>, j: usize) -> Self {
        let pos = index
            .position(index.times_var(0, j))
            .expect("degree-1 monomials are indexed when bound >= 1");
        let mut p = Self::zero(index);
        p.coeffs[pos] = 1;
        p
    }

    pub fn index(&self) -> &Arc<MonomialIndex> {
        &self.index
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn degree(&self) -> Option<u32> {
        (0..self.coeffs.len())
            .rev()
            .find(|&i| self.coeffs[i] != 0)
            .map(|i| self.index.degree(i))
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = self.index.field();
        Self {
            index: self.index.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn evaluate(&self, x: &[u64]) -> Result<u64, MultilinearError> {
        self.index.check_point(x)?;
        let f = self.index.field();
        Ok(self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .fold(0u64, |acc, (i, &c)| {
                f.add(acc, f.mul(c, self.index.eval_code(self.index.code(i), x)))
            }))
    }

    pub fn terms(&self) -> Vec<Term> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| Term(self.index.monomial_at(i).exponents, c))
            .collect()
    }

    pub fn from_terms(index: Arc<MonomialIndex>, terms: &[Term]) -> Result<Self, MultilinearError> {
        let f = index.field().clone();
        let mut p = Self::zero(index);
        for Term(exps, c) in terms {
            let mono = Monomial {
                exponents: exps.clone(),
            };
            let i = p
                .index
                .index_of(&mono)
                .ok_or(MultilinearError::MonomialOutOfRange)?;
            p.coeffs[i] = f.add(p.coeffs[i], f.from_int(*c));
        }
        Ok(p)
    }

    /// `reduce(P(Mx + b))`.
    pub fn affine_substitute(
        &self,
        m: &Matrix<PrimeField>,
        b: &[u64],
    ) -> Result<Self, MultilinearError> {
        let t = substitution_matrix(&self.index, m, b)?;
        let row = Matrix::from_rows(self.index.field(), vec![self.coeffs.clone()]);
        Ok(Self {
            index: self.index.clone(),
            coeffs: row.mul(&t).row(0).to_vec(),
        })
    }
}

/// Reduces arbitrary exponents with `X^p = X` and returns the polynomial in
/// the smallest index containing every reduced term.
pub fn reduce(m: usize, p: u64, terms: &[Term]) -> Result<MultilinearPoly, MultilinearError> {
    let fold = |e: u32| {
        if e == 0 {
            0
        } else {
            (e - 1) % (p as u32 - 1) + 1
        }
    };
    let reduced: Vec<Term> = terms
        .iter()
        .map(|Term(e, c)| Term(e.iter().map(|&x| fold(x)).collect(), *c))
        .collect();
    for Term(e, _) in &reduced {
        if e.len() != m {
            return Err(MultilinearError::DimensionMismatch {
                expected: m,
                got: e.len(),
            });
        }
    }
    let bound = reduced
        .iter()
        .map(|Term(e, _)| e.iter().sum::<u32>())
        .max()
        .unwrap_or(0);
    let index = Arc::new(MonomialIndex::new(m, bound, p)?);
    MultilinearPoly::from_terms(index, &reduced)
}

/// Row `i` holds the coefficients of `reduce(M_i(Ax + b))` for the `i`-th
/// monomial `M_i` of the index. Substitution is affine, so the degree never
/// grows and the images stay inside the same index.
pub fn substitution_matrix(
    index: &MonomialIndex,
    a: &Matrix<PrimeField>,
    b: &[u64],
) -> Result<Matrix<PrimeField>, MultilinearError> {
    let m = index.m();
    if a.rows() != m || a.cols() != m || b.len() != m {
        return Err(MultilinearError::DimensionMismatch {
            expected: m,
            got: if a.rows() != m { a.rows() } else { b.len() },
        });
    }
    if !a.is_invertible() {
        return Err(MultilinearError::SingularMap);
    }
    let f = index.field();
    let n = index.len();
    let mut t = Matrix::zeros(f, n, n);
    t.set(0, 0, 1);
    // Degree-1 positions of X_1..X_m.
    let var_pos: Vec<usize> = (0..m)
        .map(|j| index.position(index.times_var(0, j)))
        .collect::<Option<_>>()
        .unwrap_or_default();
    for i in 1..n {
        let code = index.code(i);
        // Split off the first variable present: M = X_j * M'.
        let j = (0..m)
            .find(|&j| index.exponent_of(code, j) > 0)
            .expect("non-constant monomial");
        let prev_code = code - index.codes()[var_pos[j]];
        let prev = index
            .position(prev_code)
            .expect("graded index is downward closed");
        let prev_row: Vec<(usize, u64)> = t
            .row(prev)
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| (k, c))
            .collect();
        let mut row = vec![0u64; n];
        for (k, c) in prev_row {
            let base = index.code(k);
            if b[j] != 0 {
                row[k] = f.add(row[k], f.mul(c, b[j]));
            }
            for (v, &pos) in var_pos.iter().enumerate() {
                let coef = a.get(j, v);
                if coef == 0 {
                    continue;
                }
                let prod = index.mul_codes(base, index.code(pos));
                let dst = index.position(prod).expect("degree does not increase");
                row[dst] = f.add(row[dst], f.mul(c, coef));
            }
        }
        t.row_mut(i).copy_from_slice(&row);
    }
    Ok(t)
}

/// Coefficients of `P(x_1, .., x_{m-1}, c)` in `target`, the index over the
/// first `m - 1` variables with the same bound.
pub(crate) fn restrict_last_coeffs(
    index: &MonomialIndex,
    target: &MonomialIndex,
    coeffs: &[u64],
    c: u64,
) -> Vec<u64> {
    let f = index.field();
    let m = index.m();
    let top = index.p().pow(m as u32 - 1);
    let mut out = vec![0u64; target.len()];
    for (i, &a) in coeffs.iter().enumerate() {
        if a == 0 {
            continue;
        }
        let code = index.code(i);
        let e = index.exponent_of(code, m - 1);
        let w = if e == 0 { 1 } else { f.pow(c, e as u128) };
        if w == 0 {
            continue;
        }
        let dst = target
            .position(code % top)
            .expect("restricted monomial is indexed");
        out[dst] = f.add(out[dst], f.mul(a, w));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn all_points(m: usize, p: u64) -> Vec<Vec<u64>> {
        (0..p.pow(m as u32))
            .map(|i| (0..m).map(|j| (i / p.pow(j as u32)) % p).collect())
            .collect()
    }

    fn random_poly(index: &Arc<MonomialIndex>, rng: &mut ChaCha8Rng) -> MultilinearPoly {
        let p = index.p();
        let c = (0..index.len()).map(|_| rng.gen_range(0..p)).collect();
        MultilinearPoly::new(index.clone(), c).unwrap()
    }

    pub(crate) fn random_invertible(
        f: &PrimeField,
        m: usize,
        rng: &mut ChaCha8Rng,
    ) -> Matrix<PrimeField> {
        loop {
            let a = Matrix::from_fn(f, m, m, |_, _| rng.gen_range(0..f.p()));
            if a.is_invertible() {
                return a;
            }
        }
    }

    #[test]
    fn evaluate_examples() {
        let idx = Arc::new(MonomialIndex::new(2, 1, 2).unwrap());
        let one = MultilinearPoly::constant(idx.clone(), 1);
        assert_eq!(one.evaluate(&[1, 0]).unwrap(), 1);
        let s = MultilinearPoly::variable(idx.clone(), 0)
            .add(&MultilinearPoly::variable(idx.clone(), 1));
        assert_eq!(s.evaluate(&[1, 1]).unwrap(), 0);
        assert!(s.evaluate(&[1]).is_err());
    }

    #[test]
    fn evaluate_matches_truth_table_expansion() {
        // Truth-table oracle: build the function table monomial by monomial
        // as products of coordinate tables.
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = 10;
        let idx = Arc::new(MonomialIndex::new(m, 4, 2).unwrap());
        let p = random_poly(&idx, &mut rng);
        let n = 1usize << m;
        let mut table = vec![0u64; n];
        for (i, &c) in p.coeffs().iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mono = idx.monomial_at(i);
            for (x, slot) in table.iter_mut().enumerate() {
                let v = mono
                    .exponents
                    .iter()
                    .enumerate()
                    .all(|(j, &e)| e == 0 || (x >> j) & 1 == 1);
                *slot ^= v as u64;
            }
        }
        for (x, &expect) in table.iter().enumerate() {
            let pt: Vec<u64> = (0..m).map(|j| ((x >> j) & 1) as u64).collect();
            assert_eq!(p.evaluate(&pt).unwrap(), expect);
        }
    }

    #[test]
    fn reduce_examples() {
        let r = reduce(1, 2, &[Term(vec![2], 1)]).unwrap();
        assert_eq!(r.terms(), vec![Term(vec![1], 1)]);
        let r = reduce(1, 3, &[Term(vec![3], 1)]).unwrap();
        assert_eq!(r.terms(), vec![Term(vec![1], 1)]);
        let r = reduce(1, 3, &[Term(vec![4], 1)]).unwrap();
        assert_eq!(r.terms(), vec![Term(vec![2], 1)]);
    }

    #[test]
    fn reduce_preserves_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for (m, p) in [(6usize, 2u64), (4, 3), (3, 5)] {
            let f = PrimeField::new(p).unwrap();
            for _ in 0..20 {
                let terms: Vec<Term> = (0..8)
                    .map(|_| {
                        Term(
                            (0..m).map(|_| rng.gen_range(0..5)).collect(),
                            rng.gen_range(0..p),
                        )
                    })
                    .collect();
                let r = reduce(m, p, &terms).unwrap();
                assert!(r.index().codes().iter().all(|&c| (0..m).all(|j| (r
                    .index()
                    .exponent_of(c, j)
                    as u64)
                    < p)));
                for x in all_points(m, p) {
                    let direct = terms.iter().fold(0u64, |acc, Term(e, c)| {
                        let v = e
                            .iter()
                            .zip(&x)
                            .fold(1u64, |a, (&ej, &xj)| f.mul(a, f.pow(xj, ej as u128)));
                        f.add(acc, f.mul(*c, v))
                    });
                    assert_eq!(r.evaluate(&x).unwrap(), direct);
                }
                // Idempotent.
                let again = reduce(m, p, &r.terms()).unwrap();
                assert_eq!(again.terms(), r.terms());
            }
        }
    }

    #[test]
    fn affine_substitution_examples() {
        let f = PrimeField::new(2).unwrap();
        let idx = Arc::new(MonomialIndex::new(3, 2, 2).unwrap());
        let x1 = MultilinearPoly::variable(idx.clone(), 0);
        let id = Matrix::identity(&f, 3);
        assert_eq!(x1.affine_substitute(&id, &[0, 0, 0]).unwrap(), x1);
        let shifted = x1.affine_substitute(&id, &[1, 0, 0]).unwrap();
        assert_eq!(shifted, x1.add(&MultilinearPoly::constant(idx.clone(), 1)));
        let singular = Matrix::zeros(&f, 3, 3);
        assert_eq!(
            x1.affine_substitute(&singular, &[0, 0, 0]),
            Err(MultilinearError::SingularMap)
        );
    }

    #[test]
    fn affine_substitution_matches_pointwise_and_inverts() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (m, p, bound) in [(6usize, 2u64, 3u32), (4, 3, 3), (3, 5, 4)] {
            let f = PrimeField::new(p).unwrap();
            let idx = Arc::new(MonomialIndex::new(m, bound, p).unwrap());
            for _ in 0..10 {
                let poly = random_poly(&idx, &mut rng);
                let a = random_invertible(&f, m, &mut rng);
                let b: Vec<u64> = (0..m).map(|_| rng.gen_range(0..p)).collect();
                let q = poly.affine_substitute(&a, &b).unwrap();
                for x in all_points(m, p) {
                    let ax = a.mul_vec(&x);
                    let y: Vec<u64> = ax.iter().zip(&b).map(|(&u, &v)| f.add(u, v)).collect();
                    assert_eq!(q.evaluate(&x).unwrap(), poly.evaluate(&y).unwrap());
                }
                let inv = a.inverse().unwrap();
                let nb: Vec<u64> = inv.mul_vec(&b).iter().map(|&v| f.neg(v)).collect();
                assert_eq!(q.affine_substitute(&inv, &nb).unwrap(), poly);
            }
        }
    }

    #[test]
    fn json_terms_round_trip() {
        let idx = Arc::new(MonomialIndex::new(3, 2, 3).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let p = random_poly(&idx, &mut rng);
        let json = serde_json::to_string(&p.terms()).unwrap();
        let terms: Vec<Term> = serde_json::from_str(&json).unwrap();
        assert_eq!(MultilinearPoly::from_terms(idx, &terms).unwrap(), p);
    }
}
