use std::collections::HashSet;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{CodeParams, RmError};
use crate::field::PrimeField;
use crate::linalg::Matrix;
use crate::multilinear::MonomialIndex;

/// Coordinates of the point with enumeration index `index`: base-`p` digits,
/// `x_1` least significant.
pub fn point_from_index(index: u64, m: usize, p: u64) -> Vec<u64> {
    let mut rest = index;
    (0..m)
        .map(|_| {
            let d = rest % p;
            rest /= p;
            d
        })
        .collect()
}

pub fn point_index(x: &[u64], p: u64) -> u64 {
    x.iter().rev().fold(0u64, |acc, &d| acc * p + d)
}

/// Distinct points of `F_p^m`, kept sorted in enumeration order so that
/// equality is set equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ErrorSet {
    m: usize,
    p: u64,
    points: Vec<Vec<u64>>,
}

impl ErrorSet {
    pub fn new(m: usize, p: u64, mut points: Vec<Vec<u64>>) -> Result<Self, RmError> {
        for x in &points {
            if x.len() != m || x.iter().any(|&c| c >= p) {
                return Err(RmError::BadPoint(x.clone()));
            }
        }
        points.sort_by_key(|x| point_index(x, p));
        if points.windows(2).any(|w| w[0] == w[1]) {
            return Err(RmError::RepeatedPoint);
        }
        Ok(Self { m, p, points })
    }

    pub fn empty(m: usize, p: u64) -> Self {
        Self {
            m,
            p,
            points: Vec::new(),
        }
    }

    pub fn from_indices(m: usize, p: u64, indices: &[u64]) -> Result<Self, RmError> {
        Self::new(
            m,
            p,
            indices.iter().map(|&i| point_from_index(i, m, p)).collect(),
        )
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn points(&self) -> &[Vec<u64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn indices(&self) -> Vec<u64> {
        self.points.iter().map(|x| point_index(x, self.p)).collect()
    }

    /// Number of points in exactly one of the two sets.
    pub fn symmetric_difference(&self, other: &Self) -> usize {
        let a: HashSet<&Vec<u64>> = self.points.iter().collect();
        let b: HashSet<&Vec<u64>> = other.points.iter().collect();
        a.symmetric_difference(&b).count()
    }
}

/// Whether `{e^{⊗≤r} : e in E}` is linearly independent.
pub fn has_property_ur(points: &[Vec<u64>], r: u32, m: usize, p: u64) -> Result<bool, RmError> {
    let index = MonomialIndex::new(m, r, p)?;
    if points.len() > index.len() {
        return Ok(false);
    }
    if points.is_empty() {
        return Ok(true);
    }
    let f = PrimeField::new(p)?;
    let rows = points
        .iter()
        .map(|x| index.tensor_power(x))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_rows(&f, rows).rank() == points.len())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampledErrors {
    pub errors: ErrorSet,
    /// Draws rejected because U_r failed.
    pub resamples: usize,
}

/// `t` distinct uniform points, redrawn until they satisfy U_r.
pub fn sample_error_set<R: Rng + ?Sized>(
    params: &CodeParams,
    t: usize,
    rng: &mut R,
    max_attempts: usize,
) -> Result<SampledErrors, RmError> {
    let (m, p) = (params.m, params.p);
    let n = params.n();
    if t as u64 > n || t > MonomialIndex::count(m, params.r as u32, p) {
        return Err(RmError::SamplingFailed { t, attempts: 0 });
    }
    for attempt in 0..max_attempts.max(1) {
        let mut seen = HashSet::with_capacity(t);
        while seen.len() < t {
            seen.insert(rng.gen_range(0..n));
        }
        let mut idx: Vec<u64> = seen.into_iter().collect();
        idx.sort_unstable();
        let errors = ErrorSet::from_indices(m, p, &idx)?;
        if has_property_ur(errors.points(), params.r as u32, m, p)? {
            return Ok(SampledErrors {
                errors,
                resamples: attempt,
            });
        }
    }
    Err(RmError::SamplingFailed {
        t,
        attempts: max_attempts,
    })
}
