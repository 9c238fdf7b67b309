use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::MultilinearError;
use crate::field::{Field, PrimeField};

/// Exponent vector of a reduced monomial (every exponent below `p`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub exponents: Vec<u32>,
}

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }
}

/// All reduced monomials in `m` variables of total degree at most `bound`
/// over `F_p`, ordered by degree, then lexicographically descending on the
/// exponent vector (so `X1` precedes `X2`); the constant monomial is first.
///
/// A monomial is addressed by its code `sum e_j p^(j-1)`, which over `F_2` is
/// the bitmask of its variables. Because the order is graded, the index for a
/// smaller bound is a prefix of the index for a larger one.
#[derive(Debug, Clone)]
pub struct MonomialIndex {
    m: usize,
    bound: u32,
    field: PrimeField,
    codes: Vec<u64>,
    degrees: Vec<u32>,
    /// `offsets[d]` = number of monomials of degree < d.
    offsets: Vec<usize>,
    lookup: HashMap<u64, usize>,
    place: Vec<u64>,
}

impl PartialEq for MonomialIndex {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.bound == other.bound && self.field.p() == other.field.p()
    }
}

impl Eq for MonomialIndex {}

fn push_degree(
    p: u64,
    m: usize,
    var: usize,
    remaining: u32,
    code: u64,
    place: &[u64],
    out: &mut Vec<u64>,
) {
    if var == m {
        if remaining == 0 {
            out.push(code);
        }
        return;
    }
    // Remaining variables can absorb at most (m - var)(p - 1).
    let top = (remaining as u64).min(p - 1);
    for e in (0..=top).rev() {
        let rest = remaining - e as u32;
        if (rest as u64) > (m - var - 1) as u64 * (p - 1) {
            break;
        }
        push_degree(p, m, var + 1, rest, code + e * place[var], place, out);
    }
}

impl MonomialIndex {
    pub fn new(m: usize, bound: u32, p: u64) -> Result<Self, MultilinearError> {
        let field = PrimeField::new(p)?;
        if (p as u128).pow(m as u32) > u64::MAX as u128 {
            return Err(MultilinearError::TooManyVariables { m, p });
        }
        let place: Vec<u64> = (0..m).map(|j| p.pow(j as u32)).collect();
        let mut codes = Vec::new();
        let mut degrees = Vec::new();
        let mut offsets = Vec::with_capacity(bound as usize + 2);
        for d in 0..=bound {
            offsets.push(codes.len());
            let before = codes.len();
            push_degree(p, m, 0, d, 0, &place, &mut codes);
            degrees.extend(std::iter::repeat(d).take(codes.len() - before));
        }
        offsets.push(codes.len());
        let lookup = codes.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        Ok(Self {
            m,
            bound,
            field,
            codes,
            degrees,
            offsets,
            lookup,
            place,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn code(&self, i: usize) -> u64 {
        self.codes[i]
    }

    pub fn codes(&self) -> &[u64] {
        &self.codes
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    /// Number of monomials of degree at most `d`.
    pub fn prefix_len(&self, d: u32) -> usize {
        self.offsets[(d.min(self.bound) + 1) as usize]
    }

    pub fn position(&self, code: u64) -> Option<usize> {
        self.lookup.get(&code).copied()
    }

    /// Exponent of `X_{j+1}` in the monomial with the given code.
    #[inline]
    pub fn exponent_of(&self, code: u64, j: usize) -> u32 {
        ((code / self.place[j]) % self.p()) as u32
    }

    pub fn monomial_at(&self, i: usize) -> Monomial {
        let code = self.codes[i];
        Monomial {
            exponents: (0..self.m).map(|j| self.exponent_of(code, j)).collect(),
        }
    }

    pub fn code_of(&self, mono: &Monomial) -> Option<u64> {
        if mono.exponents.len() != self.m || mono.exponents.iter().any(|&e| e as u64 >= self.p()) {
            return None;
        }
        Some(
            mono.exponents
                .iter()
                .zip(&self.place)
                .map(|(&e, &w)| e as u64 * w)
                .sum(),
        )
    }

    pub fn index_of(&self, mono: &Monomial) -> Option<usize> {
        self.code_of(mono).and_then(|c| self.position(c))
    }

    /// Code of `reduce(a * b)`: exponents add and `X^p` folds back to `X`.
    #[inline]
    pub fn mul_codes(&self, a: u64, b: u64) -> u64 {
        let p = self.p();
        if p == 2 {
            return a | b;
        }
        let mut out = 0u64;
        for (j, &w) in self.place.iter().enumerate() {
            let mut e = self.exponent_of(a, j) as u64 + self.exponent_of(b, j) as u64;
            if e >= p {
                e -= p - 1;
            }
            out += e * w;
        }
        out
    }

    /// Code of the monomial with `X_{j+1}` raised by one, reduced.
    pub fn times_var(&self, code: u64, j: usize) -> u64 {
        let e = self.exponent_of(code, j) as u64;
        if e + 1 < self.p() {
            code + self.place[j]
        } else {
            // X^{p-1} * X = X^p = X.
            code - (e - 1) * self.place[j]
        }
    }

    /// Value of the monomial with the given code at `x`.
    pub fn eval_code(&self, code: u64, x: &[u64]) -> u64 {
        let f = &self.field;
        if self.p() == 2 {
            let mask = x
                .iter()
                .enumerate()
                .fold(0u64, |acc, (j, &v)| acc | ((v & 1) << j));
            return (code & !mask == 0) as u64;
        }
        let mut acc = 1u64;
        for (j, &v) in x.iter().enumerate().take(self.m) {
            let e = self.exponent_of(code, j);
            if e > 0 {
                acc = f.mul(acc, f.pow(v, e as u128));
            }
        }
        acc
    }

    /// `x^{⊗≤bound}`: every monomial of the index evaluated at `x`.
    pub fn tensor_power(&self, x: &[u64]) -> Result<Vec<u64>, MultilinearError> {
        self.check_point(x)?;
        Ok(self.codes.iter().map(|&c| self.eval_code(c, x)).collect())
    }

    pub(crate) fn check_point(&self, x: &[u64]) -> Result<(), MultilinearError> {
        if x.len() != self.m {
            return Err(MultilinearError::DimensionMismatch {
                expected: self.m,
                got: x.len(),
            });
        }
        Ok(())
    }

    /// Number of monomials of degree at most `bound` without building an
    /// index.
    pub fn count(m: usize, bound: u32, p: u64) -> usize {
        // dp[d] = number of exponent vectors over the processed variables
        // with total degree d.
        let b = bound as usize;
        let mut dp = vec![0usize; b + 1];
        dp[0] = 1;
        for _ in 0..m {
            let mut next = vec![0usize; b + 1];
            for (d, &c) in dp.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for e in 0..(p as usize).min(b - d + 1) {
                    next[d + e] += c;
                }
            }
            dp = next;
        }
        dp.iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binomial_sum(m: usize, t: usize) -> usize {
        let mut total = 0;
        let mut c = 1usize;
        for i in 0..=t.min(m) {
            total += c;
            c = c * (m - i) / (i + 1);
        }
        total
    }

    #[test]
    fn sizes_match_binomial_sums_over_f2() {
        for m in 0..12 {
            for t in 0..6u32 {
                let idx = MonomialIndex::new(m, t, 2).unwrap();
                assert_eq!(idx.len(), binomial_sum(m, t as usize));
                assert_eq!(MonomialIndex::count(m, t, 2), idx.len());
            }
        }
    }

    #[test]
    fn sizes_over_f3_match_enumeration() {
        for m in 0..6 {
            for t in 0..7u32 {
                let idx = MonomialIndex::new(m, t, 3).unwrap();
                let brute = (0..3u64.pow(m as u32))
                    .filter(|&c| {
                        let mut d = 0;
                        let mut x = c;
                        for _ in 0..m {
                            d += x % 3;
                            x /= 3;
                        }
                        d <= t as u64
                    })
                    .count();
                assert_eq!(idx.len(), brute);
                assert_eq!(MonomialIndex::count(m, t, 3), brute);
            }
        }
    }

    #[test]
    fn order_is_graded_lex_descending_with_constant_first() {
        let idx = MonomialIndex::new(3, 2, 2).unwrap();
        let names: Vec<Vec<u32>> = (0..idx.len())
            .map(|i| idx.monomial_at(i).exponents)
            .collect();
        assert_eq!(
            names,
            vec![
                vec![0, 0, 0],
                vec![1, 0, 0],
                vec![0, 1, 0],
                vec![0, 0, 1],
                vec![1, 1, 0],
                vec![1, 0, 1],
                vec![0, 1, 1],
            ]
        );
        let idx3 = MonomialIndex::new(2, 2, 3).unwrap();
        let names: Vec<Vec<u32>> = (0..idx3.len())
            .map(|i| idx3.monomial_at(i).exponents)
            .collect();
        assert_eq!(
            names,
            vec![
                vec![0, 0],
                vec![1, 0],
                vec![0, 1],
                vec![2, 0],
                vec![1, 1],
                vec![0, 2],
            ]
        );
    }

    #[test]
    fn ordering_round_trip_and_prefix() {
        for p in [2u64, 3, 5] {
            let idx = MonomialIndex::new(5, 4, p).unwrap();
            for i in 0..idx.len() {
                assert_eq!(idx.index_of(&idx.monomial_at(i)), Some(i));
            }
            let small = MonomialIndex::new(5, 2, p).unwrap();
            assert_eq!(idx.prefix_len(2), small.len());
            assert_eq!(&idx.codes()[..small.len()], small.codes());
        }
    }

    #[test]
    fn tensor_power_example() {
        let idx = MonomialIndex::new(3, 2, 2).unwrap();
        assert_eq!(
            idx.tensor_power(&[1, 0, 1]).unwrap(),
            vec![1, 1, 0, 1, 0, 1, 0]
        );
        assert_eq!(
            idx.tensor_power(&[0, 0, 0]).unwrap(),
            vec![1, 0, 0, 0, 0, 0, 0]
        );
        assert!(idx.tensor_power(&[1, 0]).is_err());
    }

    #[test]
    fn products_reduce_and_are_multiplicative() {
        let idx = MonomialIndex::new(4, 4, 3).unwrap();
        let f = idx.field().clone();
        let points: Vec<Vec<u64>> = (0..81u64)
            .map(|i| (0..4).map(|j| (i / 3u64.pow(j)) % 3).collect())
            .collect();
        for a in 0..idx.prefix_len(2) {
            for b in 0..idx.prefix_len(2) {
                let c = idx.mul_codes(idx.code(a), idx.code(b));
                assert!(idx.position(c).is_some());
                for x in &points {
                    assert_eq!(
                        idx.eval_code(c, x),
                        f.mul(idx.eval_code(idx.code(a), x), idx.eval_code(idx.code(b), x))
                    );
                }
            }
        }
        // X1^2 * X1 = X1 over F_3.
        let x1sq = idx
            .code_of(&Monomial {
                exponents: vec![2, 0, 0, 0],
            })
            .unwrap();
        assert_eq!(idx.times_var(x1sq, 0), 1);
    }
}
