//! Decoding through the space of low-degree polynomials vanishing on the
//! error set: solve for the space from the syndrome, then find its common
//! zeroes by random isolation or by deterministic branching.

mod det;
mod isolation;
mod roots;

pub use det::{det_find_roots, DetFindRootsOutcome};
pub use isolation::{
    find_roots, iteration_budget, sample_invertible, vv_hypothesis_holds, vv_sample,
    AffineRestriction, FindRootsOutcome, IsolationParams, VvSample,
};
pub use roots::{count_errors, find_unique_root, root_space_index, space_roots};

use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::field::PrimeField;
use crate::linalg::Matrix;
use crate::multilinear::{MonomialIndex, MultilinearError, PolySpace};
use crate::rm::{CodeParams, ErrorSet, RmError, Syndrome};

#[derive(Debug, Error)]
pub enum PolyspaceError {
    #[error("inconsistent vanishing space: {vars} variables, codimension {codim}, found {found}")]
    Inconsistent {
        vars: usize,
        codim: usize,
        found: usize,
    },
    #[error("root search found {found} of {expected} points")]
    Incomplete {
        found: usize,
        expected: usize,
        partial: ErrorSet,
    },
    #[error("recovered points do not reproduce the syndrome")]
    Residual,
    #[error(transparent)]
    Rm(#[from] RmError),
    #[error(transparent)]
    Multilinear(#[from] MultilinearError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyspaceMode {
    Randomized,
    Deterministic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyspaceOutcome {
    pub errors: ErrorSet,
    pub magnitudes: Vec<u64>,
    pub space: PolySpace,
    /// Isolation rounds (randomized) or restrictions (deterministic).
    pub iterations: usize,
}

/// Error magnitudes and the syndrome left after removing them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Correction {
    pub magnitudes: Vec<u64>,
    pub residual: Syndrome,
}

#[derive(Debug, Clone)]
pub struct PolyspaceDecoder {
    params: CodeParams,
    mode: PolyspaceMode,
    syndrome_index: MonomialIndex,
    root_index: Arc<MonomialIndex>,
}

impl PolyspaceDecoder {
    pub fn new(params: CodeParams, mode: PolyspaceMode) -> Result<Self, PolyspaceError> {
        params.validate()?;
        Ok(Self {
            syndrome_index: params.syndrome_index()?,
            root_index: Arc::new(MonomialIndex::new(params.m, params.r as u32 + 1, params.p)?),
            params,
            mode,
        })
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    pub fn space(&self, syndrome: &Syndrome) -> Result<PolySpace, PolyspaceError> {
        if *syndrome.params() != self.params {
            return Err(RmError::SyndromeShape.into());
        }
        Ok(space_roots(
            syndrome,
            &self.syndrome_index,
            self.root_index.clone(),
        ))
    }

    pub fn decode<R: Rng + ?Sized>(
        &self,
        syndrome: &Syndrome,
        rng: &mut R,
    ) -> Result<PolyspaceOutcome, PolyspaceError> {
        let space = self.space(syndrome)?;
        let (errors, iterations) = match self.mode {
            PolyspaceMode::Randomized => {
                let out = find_roots(&space, rng)?;
                if !out.complete {
                    return Err(PolyspaceError::Incomplete {
                        found: out.errors.len(),
                        expected: space.codim(),
                        partial: out.errors,
                    });
                }
                (out.errors, out.iterations)
            }
            PolyspaceMode::Deterministic => {
                let out = det_find_roots(&space)?;
                (out.errors, out.restrictions)
            }
        };
        let correction = correct(syndrome, &self.syndrome_index, &errors)?;
        Ok(PolyspaceOutcome {
            errors,
            magnitudes: correction.magnitudes,
            space,
            iterations,
        })
    }
}

/// Removes the located errors from the syndrome. Over `F_2` every
/// magnitude is 1; otherwise magnitudes solve
/// `sum_e y_e e^{⊗≤2r+1} = S`. A nonzero residual is an error.
pub fn correct(
    syndrome: &Syndrome,
    syndrome_index: &MonomialIndex,
    errors: &ErrorSet,
) -> Result<Correction, PolyspaceError> {
    let params = syndrome.params();
    let magnitudes = if params.p == 2 {
        vec![1; errors.len()]
    } else {
        syndrome
            .solve_magnitudes(syndrome_index, errors)?
            .ok_or(PolyspaceError::Residual)?
    };
    let fix = Syndrome::from_weighted_errors_in(params, syndrome_index, errors, &magnitudes)?;
    let residual = syndrome.sub(&fix);
    if !residual.is_zero() {
        return Err(PolyspaceError::Residual);
    }
    Ok(Correction {
        magnitudes,
        residual,
    })
}

/// Locates the errors and checks that removing them clears the syndrome.
pub fn locate_and_correct<R: Rng + ?Sized>(
    syndrome: &Syndrome,
    mode: PolyspaceMode,
    rng: &mut R,
) -> Result<(ErrorSet, Correction), PolyspaceError> {
    let decoder = PolyspaceDecoder::new(*syndrome.params(), mode)?;
    let out = decoder.decode(syndrome, rng)?;
    let correction = correct(syndrome, &decoder.syndrome_index, &out.errors)?;
    Ok((out.errors, correction))
}

/// Whether `x -> Mx + b` keeps the rank of `{e^{⊗≤r}}`.
pub fn check_ur_preserved(
    errors: &ErrorSet,
    r: u32,
    m: &Matrix<PrimeField>,
    b: &[u64],
) -> Result<bool, PolyspaceError> {
    if !m.is_invertible() {
        return Err(MultilinearError::SingularMap.into());
    }
    let index = MonomialIndex::new(errors.m(), r, errors.p())?;
    let f = index.field().clone();
    let rank = |pts: &[Vec<u64>]| -> Result<usize, PolyspaceError> {
        if pts.is_empty() {
            return Ok(0);
        }
        let rows = pts
            .iter()
            .map(|x| index.tensor_power(x))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix::from_rows(&f, rows).rank())
    };
    let moved: Vec<Vec<u64>> = errors
        .points()
        .iter()
        .map(|x| {
            m.mul_vec(x)
                .iter()
                .zip(b)
                .map(|(&u, &v)| (u + v) % f.p())
                .collect()
        })
        .collect();
    Ok(rank(errors.points())? == rank(&moved)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rm::sample_error_set;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn planted(
        params: CodeParams,
        t: usize,
        rng: &mut ChaCha8Rng,
    ) -> (ErrorSet, Vec<u64>, Syndrome) {
        let e = sample_error_set(&params, t, rng, 100).unwrap().errors;
        let mags: Vec<u64> = (0..t).map(|_| rng.gen_range(1..params.p)).collect();
        let s = Syndrome::from_weighted_errors(&params, &e, &mags).unwrap();
        (e, mags, s)
    }

    #[test]
    fn both_modes_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (m, r, p, t) in [
            (10usize, 1usize, 2u64, 8usize),
            (8, 2, 2, 8),
            (6, 1, 3, 3),
            (6, 0, 2, 1),
        ] {
            let params = CodeParams::new(m, r, p).unwrap();
            for mode in [PolyspaceMode::Randomized, PolyspaceMode::Deterministic] {
                let dec = PolyspaceDecoder::new(params, mode).unwrap();
                for _ in 0..3 {
                    let (e, mags, s) = planted(params, t, &mut rng);
                    let out = dec.decode(&s, &mut rng).unwrap();
                    assert_eq!(out.errors, e, "m={m} r={r} p={p} {mode:?}");
                    assert_eq!(out.magnitudes, mags);
                }
            }
        }
    }

    #[test]
    fn locate_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let params = CodeParams::binary(6, 1).unwrap();
        let (e, c) = locate_and_correct(
            &Syndrome::zero(params),
            PolyspaceMode::Deterministic,
            &mut rng,
        )
        .unwrap();
        assert!(e.is_empty() && c.residual.is_zero());
        let one = ErrorSet::from_indices(6, 2, &[33]).unwrap();
        let s = Syndrome::from_errors(&params, &one).unwrap();
        let (e, c) = locate_and_correct(&s, PolyspaceMode::Randomized, &mut rng).unwrap();
        assert_eq!(e, one);
        assert!(c.residual.is_zero());
        let p3 = CodeParams::new(6, 1, 3).unwrap();
        let (e3, mags, s3) = planted(p3, 3, &mut rng);
        let (got, c) = locate_and_correct(&s3, PolyspaceMode::Deterministic, &mut rng).unwrap();
        assert_eq!(got, e3);
        assert_eq!(c.magnitudes, mags);
        assert!(c.residual.is_zero());
    }

    #[test]
    fn wrong_locations_leave_residual() {
        let params = CodeParams::binary(6, 1).unwrap();
        let index = params.syndrome_index().unwrap();
        let s = Syndrome::from_errors(&params, &ErrorSet::from_indices(6, 2, &[1, 2]).unwrap())
            .unwrap();
        let wrong = ErrorSet::from_indices(6, 2, &[1, 3]).unwrap();
        assert!(matches!(
            correct(&s, &index, &wrong),
            Err(PolyspaceError::Residual)
        ));
    }

    #[test]
    fn ur_preserved_under_affine_maps() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in [2u64, 3] {
            let f = PrimeField::new(p).unwrap();
            let params = CodeParams::new(6, 1, p).unwrap();
            let e = sample_error_set(&params, 5, &mut rng, 100).unwrap().errors;
            let id = Matrix::identity(&f, 6);
            assert!(check_ur_preserved(&e, 1, &id, &[0; 6]).unwrap());
            for _ in 0..20 {
                let m = sample_invertible(&f, 6, &mut rng);
                let b: Vec<u64> = (0..6).map(|_| rng.gen_range(0..p)).collect();
                assert!(check_ur_preserved(&e, 1, &m, &b).unwrap());
            }
            let singular = Matrix::zeros(&f, 6, 6);
            assert!(check_ur_preserved(&e, 1, &singular, &[0; 6]).is_err());
        }
    }
}
