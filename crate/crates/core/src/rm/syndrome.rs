use std::io::Read;

use super::word::{axis_transform, power_table};
use super::{CodeParams, ErrorSet, ReceivedWord, RmError};
use crate::field::{Field, PrimeField};
use crate::linalg::Matrix;
use crate::multilinear::MonomialIndex;

/// `sum_x y(x) x^{⊗≤2r+1}`, entries aligned to the degree-`2r+1` index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Syndrome {
    params: CodeParams,
    entries: Vec<u64>,
}

impl Syndrome {
    pub fn new(params: CodeParams, entries: Vec<u64>) -> Result<Self, RmError> {
        params.validate()?;
        if entries.len() != params.syndrome_len() {
            return Err(RmError::SyndromeShape);
        }
        if let Some(&bad) = entries.iter().find(|&&v| v >= params.p) {
            return Err(RmError::BadSymbol(bad));
        }
        Ok(Self { params, entries })
    }

    pub fn zero(params: CodeParams) -> Self {
        Self {
            entries: vec![0; params.syndrome_len()],
            params,
        }
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0)
    }

    /// Syndrome of errors of magnitude 1 at each point.
    pub fn from_errors(params: &CodeParams, errors: &ErrorSet) -> Result<Self, RmError> {
        Self::from_weighted_errors(params, errors, &vec![1; errors.len()])
    }

    pub fn from_weighted_errors(
        params: &CodeParams,
        errors: &ErrorSet,
        magnitudes: &[u64],
    ) -> Result<Self, RmError> {
        let index = params.syndrome_index()?;
        Self::from_weighted_errors_in(params, &index, errors, magnitudes)
    }

    /// As [`Syndrome::from_weighted_errors`] with a prebuilt index.
    pub fn from_weighted_errors_in(
        params: &CodeParams,
        index: &MonomialIndex,
        errors: &ErrorSet,
        magnitudes: &[u64],
    ) -> Result<Self, RmError> {
        assert_eq!(errors.len(), magnitudes.len());
        let f = params.field();
        let mut s = Self::zero(*params);
        for (x, &y) in errors.points().iter().zip(magnitudes) {
            let tp = index.tensor_power(x)?;
            for (e, v) in s.entries.iter_mut().zip(tp) {
                *e = f.add(*e, f.mul(y, v));
            }
        }
        Ok(s)
    }

    /// Batch syndrome by a per-axis transform: along each coordinate the
    /// values `v[x]` are replaced by the power sums `sum_x x^e v[x]`, after
    /// which the entry at monomial code `c` is the syndrome entry for `c`.
    pub fn from_word(word: &ReceivedWord) -> Result<Self, RmError> {
        let params = *word.params();
        let index = params.syndrome_index()?;
        let f = params.field();
        let mut table = word.symbols();
        let v = power_table(&f);
        let p = f.p() as usize;
        let vt: Vec<Vec<u64>> = (0..p).map(|e| (0..p).map(|x| v[x][e]).collect()).collect();
        axis_transform(&mut table, params.m, &f, &vt);
        let entries = index.codes().iter().map(|&c| table[c as usize]).collect();
        Ok(Self { params, entries })
    }

    /// The magnitudes `y` with `sum_e y_e e^{⊗≤2r+1} = S`, or `None` if no
    /// such nonzero `y` exists or it is not unique.
    pub fn solve_magnitudes(
        &self,
        index: &MonomialIndex,
        errors: &ErrorSet,
    ) -> Result<Option<Vec<u64>>, RmError> {
        if errors.is_empty() {
            return Ok(self.is_zero().then(Vec::new));
        }
        let f = self.params.field();
        let cols = errors
            .points()
            .iter()
            .map(|x| index.tensor_power(x))
            .collect::<Result<Vec<_>, _>>()?;
        let a = Matrix::from_fn(&f, self.entries.len(), cols.len(), |i, j| cols[j][i]);
        if a.rank() < cols.len() {
            return Ok(None);
        }
        Ok(a.solve(&self.entries).filter(|y| y.iter().all(|&v| v != 0)))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.params, other.params);
        let f = self.params.field();
        Self {
            params: self.params,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.params, other.params);
        let f = self.params.field();
        Self {
            params: self.params,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        }
    }
}

/// One-pass syndrome computation over symbols delivered in point order.
///
/// State is the syndrome vector plus a position counter; nothing is
/// allocated per symbol.
pub struct SyndromeAccumulator<'a> {
    params: CodeParams,
    index: &'a MonomialIndex,
    field: PrimeField,
    entries: Vec<u64>,
    next: u64,
}

impl<'a> SyndromeAccumulator<'a> {
    /// `index` must be the syndrome index of `params`.
    pub fn new(params: CodeParams, index: &'a MonomialIndex) -> Self {
        assert_eq!(index.len(), params.syndrome_len());
        Self {
            params,
            index,
            field: params.field(),
            entries: vec![0; index.len()],
            next: 0,
        }
    }

    pub fn position(&self) -> u64 {
        self.next
    }

    pub fn push(&mut self, y: u64) -> Result<(), RmError> {
        if self.next >= self.params.n() {
            return Err(RmError::StreamLength {
                expected: self.params.n(),
                got: self.next + 1,
            });
        }
        if y >= self.params.p {
            return Err(RmError::BadSymbol(y));
        }
        let x = self.next;
        self.next += 1;
        if y == 0 {
            return Ok(());
        }
        if self.params.p == 2 {
            // M(x) = 1 iff the variables of M are a subset of x's support.
            let out = !x;
            for (e, &c) in self.entries.iter_mut().zip(self.index.codes()) {
                if c & out == 0 {
                    *e ^= 1;
                }
            }
            return Ok(());
        }
        let m = self.params.m;
        let mut coords = [0u64; 64];
        let mut rest = x;
        for c in coords.iter_mut().take(m) {
            *c = rest % self.params.p;
            rest /= self.params.p;
        }
        let f = &self.field;
        for (e, &c) in self.entries.iter_mut().zip(self.index.codes()) {
            let v = self.index.eval_code(c, &coords[..m]);
            if v != 0 {
                *e = f.add(*e, f.mul(y, v));
            }
        }
        Ok(())
    }

    pub fn finish(self) -> Result<Syndrome, RmError> {
        if self.next != self.params.n() {
            return Err(RmError::StreamLength {
                expected: self.params.n(),
                got: self.next,
            });
        }
        Ok(Syndrome {
            params: self.params,
            entries: self.entries,
        })
    }
}

/// Streams a word in the on-disk layout (packed bits LSB-first for `F_2`,
/// one byte per symbol otherwise) through a [`SyndromeAccumulator`], using a
/// fixed stack buffer.
pub fn syndrome_streaming<R: Read>(
    params: CodeParams,
    index: &MonomialIndex,
    mut reader: R,
) -> Result<Syndrome, RmError> {
    let n = params.n();
    let mut acc = SyndromeAccumulator::new(params, index);
    let mut buf = [0u8; 4096];
    let mut consumed_all = false;
    loop {
        let got = match reader.read(&mut buf) {
            Ok(0) => break,
            Ok(k) => k,
            Err(e) if e.kind() == std::io::ErrorKind::Interrupted => continue,
            Err(e) => return Err(e.into()),
        };
        if consumed_all {
            return Err(RmError::StreamLength {
                expected: n,
                got: n + got as u64,
            });
        }
        for &byte in &buf[..got] {
            if acc.position() >= n {
                return Err(RmError::StreamLength {
                    expected: n,
                    got: n + 1,
                });
            }
            if params.p == 2 {
                let take = (n - acc.position()).min(8);
                for b in 0..take {
                    acc.push(((byte >> b) & 1) as u64)?;
                }
            } else {
                acc.push(byte as u64)?;
            }
        }
        consumed_all = acc.position() == n;
    }
    acc.finish()
}

/// Direct sum of `y(x) x^{⊗≤2r+1}` over all points.
#[cfg(test)]
pub(crate) fn syndrome_direct(params: &CodeParams, word: &ReceivedWord) -> Vec<u64> {
    let index = params.syndrome_index().unwrap();
    let f = params.field();
    let mut s = vec![0u64; index.len()];
    for i in 0..params.n() {
        let y = word.get(i);
        if y == 0 {
            continue;
        }
        let x = super::point_from_index(i, params.m, params.p);
        debug_assert_eq!(super::point_index(&x, params.p), i);
        for (e, v) in s.iter_mut().zip(index.tensor_power(&x).unwrap()) {
            *e = f.add(*e, f.mul(y, v));
        }
    }
    s
}
