use rand::Rng;

use super::{point_index, CodeParams, ErrorSet, RmError};
use crate::field::{Field, PrimeField};
use crate::multilinear::MultilinearPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
enum WordData {
    /// `F_2`: bit `i % 64` of word `i / 64` is the symbol at point `i`.
    Packed(Vec<u64>),
    Symbols(Vec<u64>),
}

/// A word of length `p^m`, indexed by points in enumeration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReceivedWord {
    params: CodeParams,
    data: WordData,
}

impl ReceivedWord {
    pub fn zero(params: CodeParams) -> Result<Self, RmError> {
        params.check_word_len()?;
        let n = params.n() as usize;
        let data = if params.p == 2 {
            WordData::Packed(vec![0; n.div_ceil(64)])
        } else {
            WordData::Symbols(vec![0; n])
        };
        Ok(Self { params, data })
    }

    pub fn from_symbols(params: CodeParams, symbols: &[u64]) -> Result<Self, RmError> {
        let mut w = Self::zero(params)?;
        if symbols.len() as u64 != params.n() {
            return Err(RmError::StreamLength {
                expected: params.n(),
                got: symbols.len() as u64,
            });
        }
        for (i, &s) in symbols.iter().enumerate() {
            if s >= params.p {
                return Err(RmError::BadSymbol(s));
            }
            w.set(i as u64, s);
        }
        Ok(w)
    }

    /// `F_2` words from packed 64-bit blocks.
    pub fn from_packed(params: CodeParams, words: Vec<u64>) -> Result<Self, RmError> {
        params.check_word_len()?;
        let n = params.n() as usize;
        if params.p != 2 || words.len() != n.div_ceil(64) {
            return Err(RmError::StreamLength {
                expected: params.n(),
                got: words.len() as u64 * 64,
            });
        }
        let mut words = words;
        if n % 64 != 0 {
            let last = words.len() - 1;
            words[last] &= (1u64 << (n % 64)) - 1;
        }
        Ok(Self {
            params,
            data: WordData::Packed(words),
        })
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    pub fn len(&self) -> u64 {
        self.params.n()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn get(&self, i: u64) -> u64 {
        match &self.data {
            WordData::Packed(w) => (w[(i / 64) as usize] >> (i % 64)) & 1,
            WordData::Symbols(s) => s[i as usize],
        }
    }

    #[inline]
    pub fn set(&mut self, i: u64, v: u64) {
        match &mut self.data {
            WordData::Packed(w) => {
                let bit = 1u64 << (i % 64);
                let slot = &mut w[(i / 64) as usize];
                if v & 1 == 1 {
                    *slot |= bit;
                } else {
                    *slot &= !bit;
                }
            }
            WordData::Symbols(s) => s[i as usize] = v,
        }
    }

    pub fn packed(&self) -> Option<&[u64]> {
        match &self.data {
            WordData::Packed(w) => Some(w),
            WordData::Symbols(_) => None,
        }
    }

    pub fn symbols(&self) -> Vec<u64> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }

    pub fn weight(&self) -> u64 {
        match &self.data {
            WordData::Packed(w) => w.iter().map(|x| x.count_ones() as u64).sum(),
            WordData::Symbols(s) => s.iter().filter(|&&x| x != 0).count() as u64,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.params, other.params);
        let data = match (&self.data, &other.data) {
            (WordData::Packed(a), WordData::Packed(b)) => {
                WordData::Packed(a.iter().zip(b).map(|(x, y)| x ^ y).collect())
            }
            (WordData::Symbols(a), WordData::Symbols(b)) => {
                let f = self.params.field();
                WordData::Symbols(a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect())
            }
            _ => unreachable!("same parameters imply same storage"),
        };
        Self {
            params: self.params,
            data,
        }
    }
}

/// Applies `out[a] = sum_b mat[a][b] v[b]` along every coordinate axis of a
/// `p^m` array laid out in point-enumeration order.
pub(crate) fn axis_transform(data: &mut [u64], m: usize, f: &PrimeField, mat: &[Vec<u64>]) {
    let p = f.p() as usize;
    let mut buf = vec![0u64; p];
    let mut stride = 1usize;
    for _ in 0..m {
        let block = stride * p;
        for start in (0..data.len()).step_by(block) {
            for off in 0..stride {
                for (b, slot) in buf.iter_mut().enumerate() {
                    *slot = data[start + off + b * stride];
                }
                for (a, row) in mat.iter().enumerate() {
                    data[start + off + a * stride] = row
                        .iter()
                        .zip(&buf)
                        .fold(0u64, |acc, (&c, &v)| f.add(acc, f.mul(c, v)));
                }
            }
        }
        stride = block;
    }
}

/// `V[x][e] = x^e` with `0^0 = 1`.
pub(crate) fn power_table(f: &PrimeField) -> Vec<Vec<u64>> {
    let p = f.p();
    (0..p)
        .map(|x| (0..p).map(|e| f.pow(x, e as u128)).collect())
        .collect()
}

/// Evaluation table of a polynomial of degree at most the code degree.
pub fn encode(params: &CodeParams, poly: &MultilinearPoly) -> Result<ReceivedWord, RmError> {
    params.check_word_len()?;
    let index = poly.index();
    if index.m() != params.m || index.p() != params.p {
        return Err(RmError::Params(
            "polynomial ring does not match the code".into(),
        ));
    }
    if let Some(d) = poly.degree() {
        if d > params.code_degree() {
            return Err(RmError::DegreeTooHigh {
                degree: d,
                max: params.code_degree(),
            });
        }
    }
    let f = params.field();
    let n = params.n() as usize;
    // Coefficients placed at their monomial codes, then x^e expanded per axis.
    let mut table = vec![0u64; n];
    for (i, &c) in poly.coeffs().iter().enumerate() {
        table[index.code(i) as usize] = c;
    }
    axis_transform(&mut table, params.m, &f, &power_table(&f));
    ReceivedWord::from_symbols(*params, &table)
}

/// Adds an error at each point of `errors`: a flip over `F_2`, a uniform
/// nonzero value over `F_p`. Returns the word and the magnitudes used.
pub fn corrupt<R: Rng + ?Sized>(
    word: &ReceivedWord,
    errors: &ErrorSet,
    rng: &mut R,
) -> (ReceivedWord, Vec<u64>) {
    let f = word.params.field();
    let mut out = word.clone();
    let mut magnitudes = Vec::with_capacity(errors.len());
    for x in errors.points() {
        let i = point_index(x, word.params.p);
        let v = if word.params.p == 2 {
            1
        } else {
            rng.gen_range(1..word.params.p)
        };
        out.set(i, f.add(out.get(i), v));
        magnitudes.push(v);
    }
    (out, magnitudes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multilinear::MonomialIndex;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn code_index(params: &CodeParams) -> Arc<MonomialIndex> {
        Arc::new(MonomialIndex::new(params.m, params.code_degree(), params.p).unwrap())
    }

    #[test]
    fn zero_and_one_polynomials() {
        let params = CodeParams::binary(6, 1).unwrap();
        let idx = code_index(&params);
        let z = encode(&params, &MultilinearPoly::zero(idx.clone())).unwrap();
        assert_eq!(z.weight(), 0);
        let one = encode(&params, &MultilinearPoly::constant(idx, 1)).unwrap();
        assert_eq!(one.weight(), 64);
    }

    #[test]
    fn encode_matches_pointwise_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (m, r, p) in [(8usize, 1usize, 2u64), (4, 1, 3), (3, 0, 5)] {
            let params = CodeParams::new(m, r, p).unwrap();
            let idx = code_index(&params);
            let c: Vec<u64> = (0..idx.len()).map(|_| rng.gen_range(0..p)).collect();
            let poly = MultilinearPoly::new(idx, c).unwrap();
            let w = encode(&params, &poly).unwrap();
            for i in 0..params.n() {
                let x = super::super::point_from_index(i, m, p);
                assert_eq!(w.get(i), poly.evaluate(&x).unwrap());
            }
        }
    }

    #[test]
    fn degree_too_high_rejected() {
        let params = CodeParams::binary(4, 1).unwrap();
        let idx = Arc::new(MonomialIndex::new(4, 1, 2).unwrap());
        let x1 = MultilinearPoly::variable(idx, 0);
        assert!(matches!(
            encode(&params, &x1),
            Err(RmError::DegreeTooHigh { .. })
        ));
    }

    #[test]
    fn corrupt_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let params = CodeParams::binary(6, 1).unwrap();
        let w = ReceivedWord::zero(params).unwrap();
        let empty = ErrorSet::empty(6, 2);
        assert_eq!(corrupt(&w, &empty, &mut rng).0, w);
        let e = ErrorSet::from_indices(6, 2, &[3, 17, 40]).unwrap();
        let (once, mags) = corrupt(&w, &e, &mut rng);
        assert_eq!(mags, vec![1, 1, 1]);
        assert_eq!(once.weight(), 3);
        assert_eq!(corrupt(&once, &e, &mut rng).0, w);
    }
}
