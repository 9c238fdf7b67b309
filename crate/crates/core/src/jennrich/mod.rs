//! Jennrich-style decomposition of the syndrome tensor over an extension
//! field: flatten with two vectors, invert a full-rank minor, and read the
//! error points off the eigenvectors.

mod derand;
mod tensor;

pub use derand::{check_flattening_conditions, derandomized_flattening_vectors};
pub use tensor::{pairing, FlatteningPair, Tensor3};

use rand::Rng;
use thiserror::Error;

use crate::field::factor::FactorBudget;
use crate::field::{find_primitive_element, BinaryField, ExtField, Field, FieldError, PrimeField};
use crate::linalg::{LinalgError, Matrix};
use crate::multilinear::MonomialIndex;
use crate::rm::{CodeParams, ErrorSet, RmError, Syndrome};

use tensor::third_axis_codes;

pub const DEFAULT_MAX_RETRIES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JennrichMode {
    Randomized,
    /// `F_2` only: fixed vectors built from a primitive element.
    Derandomized,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JennrichConfig {
    pub mode: JennrichMode,
    /// Extension degree `D`; `None` picks `10m`, capped by the field type.
    pub ext_degree: Option<u32>,
    /// Redraws of `(a, b)` after the first attempt in randomized mode.
    pub max_retries: usize,
    /// Also recover every row of `X` and check it against the points.
    pub full_x: bool,
}

impl Default for JennrichConfig {
    fn default() -> Self {
        Self {
            mode: JennrichMode::Randomized,
            ext_degree: None,
            max_retries: DEFAULT_MAX_RETRIES,
            full_x: false,
        }
    }
}

/// Why a single decomposition attempt failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AttemptFailure {
    #[error("rank of S^a is {rank} but the syndrome is nonzero")]
    RankDeficient { rank: usize },
    #[error("S^b restricted to the minor of S^a is singular")]
    RankMismatch,
    #[error("spectrum not simple: {distinct} distinct eigenvalues for dimension {dim}")]
    SpectrumNotSimple { distinct: usize, dim: usize },
    #[error("eigenvectors are not normalizable to base-field points")]
    NotBaseField,
    #[error("recovered points repeat")]
    RepeatedPoint,
    #[error("recovered points do not reproduce the syndrome")]
    Residual,
    #[error("recovered matrix X disagrees with the tensor powers of the points")]
    Inconsistent,
}

#[derive(Debug, Error)]
pub enum JennrichError {
    #[error("extension degree {requested} exceeds the supported maximum {max}")]
    ExtDegree { requested: u32, max: u32 },
    #[error("derandomized mode needs p = 2, got p = {0}")]
    DerandNeedsBinary(u64),
    #[error("derandomized mode needs extension degree D > 6m = {six_m}, got {d}")]
    DerandDegree { d: u32, six_m: usize },
    #[error("decomposition failed after {attempts} attempts: {last}")]
    Failed {
        attempts: usize,
        last: AttemptFailure,
    },
    #[error("derandomized decomposition failed (input violates U_r): {0}")]
    UrViolation(AttemptFailure),
    #[error(transparent)]
    Rm(#[from] RmError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JennrichOutcome {
    pub errors: ErrorSet,
    pub magnitudes: Vec<u64>,
    /// Attempts used, including the successful one.
    pub attempts: usize,
    /// Full `X` (columns in `errors` order) when requested.
    pub x: Option<Matrix<PrimeField>>,
}

#[derive(Debug, Clone)]
enum ExtChoice {
    Binary {
        field: BinaryField,
        fixed: Option<(Vec<u128>, Vec<u128>)>,
    },
    General {
        field: ExtField,
    },
}

/// A decoder for one parameter set; builds the extension field (and the
/// derandomized vectors) once.
#[derive(Debug, Clone)]
pub struct JennrichDecoder {
    params: CodeParams,
    config: JennrichConfig,
    index: MonomialIndex,
    ext: ExtChoice,
    degree: u32,
}

/// Largest extension degree available for characteristic `p`.
pub fn max_ext_degree(p: u64) -> u32 {
    if p == 2 {
        127
    } else {
        ExtField::max_degree(p)
    }
}

pub fn default_ext_degree(params: &CodeParams) -> u32 {
    (10 * params.m as u32).min(max_ext_degree(params.p))
}

impl JennrichDecoder {
    pub fn new(params: CodeParams, config: JennrichConfig) -> Result<Self, JennrichError> {
        params.validate()?;
        let max = max_ext_degree(params.p);
        let degree = config
            .ext_degree
            .unwrap_or_else(|| default_ext_degree(&params));
        if degree > max {
            return Err(JennrichError::ExtDegree {
                requested: degree,
                max,
            });
        }
        if degree == 0 {
            return Err(FieldError::ZeroDegree.into());
        }
        let ext = match (params.p, config.mode) {
            (2, mode) => {
                let field = BinaryField::new(degree)?;
                let fixed = if mode == JennrichMode::Derandomized {
                    if degree as usize <= 6 * params.m {
                        return Err(JennrichError::DerandDegree {
                            d: degree,
                            six_m: 6 * params.m,
                        });
                    }
                    let alpha = find_primitive_element(&field, &FactorBudget::default())?;
                    Some(derandomized_flattening_vectors(&field, alpha, params.m))
                } else {
                    None
                };
                ExtChoice::Binary { field, fixed }
            }
            (p, JennrichMode::Derandomized) => return Err(JennrichError::DerandNeedsBinary(p)),
            (p, JennrichMode::Randomized) => ExtChoice::General {
                field: ExtField::new(p, degree)?,
            },
        };
        Ok(Self {
            index: params.syndrome_index()?,
            params,
            config,
            ext,
            degree,
        })
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    pub fn ext_degree(&self) -> u32 {
        self.degree
    }

    pub fn decode<R: Rng + ?Sized>(
        &self,
        syndrome: &Syndrome,
        rng: &mut R,
    ) -> Result<JennrichOutcome, JennrichError> {
        if *syndrome.params() != self.params {
            return Err(RmError::SyndromeShape.into());
        }
        let tensor = Tensor3::from_syndrome(syndrome, &self.index)?;
        let m = self.params.m;
        match &self.ext {
            ExtChoice::Binary {
                field,
                fixed: Some((a, b)),
            } => self
                .attempt(field, &tensor, syndrome, a.clone(), b.clone())
                .map(|o| JennrichOutcome { attempts: 1, ..o })
                .map_err(JennrichError::UrViolation),
            ExtChoice::Binary { field, fixed: None } => {
                self.randomized(field, &tensor, syndrome, m, rng)
            }
            ExtChoice::General { field } => self.randomized(field, &tensor, syndrome, m, rng),
        }
    }

    fn randomized<F: Field, R: Rng + ?Sized>(
        &self,
        field: &F,
        tensor: &Tensor3,
        syndrome: &Syndrome,
        m: usize,
        rng: &mut R,
    ) -> Result<JennrichOutcome, JennrichError> {
        let attempts = self.config.max_retries + 1;
        let mut last = None;
        for attempt in 1..=attempts {
            let a: Vec<F::Elem> = (0..=m).map(|_| field.random(rng)).collect();
            let b: Vec<F::Elem> = (0..=m).map(|_| field.random(rng)).collect();
            match self.attempt(field, tensor, syndrome, a, b) {
                Ok(o) => {
                    return Ok(JennrichOutcome {
                        attempts: attempt,
                        ..o
                    })
                }
                Err(e) => {
                    log::debug!("jennrich attempt {attempt} failed: {e}");
                    last = Some(e);
                }
            }
        }
        Err(JennrichError::Failed {
            attempts,
            last: last.expect("at least one attempt"),
        })
    }

    fn attempt<F: Field>(
        &self,
        field: &F,
        tensor: &Tensor3,
        syndrome: &Syndrome,
        a: Vec<F::Elem>,
        b: Vec<F::Elem>,
    ) -> Result<JennrichOutcome, AttemptFailure> {
        let index = &self.index;
        let pair = FlatteningPair::new(field, tensor, a, b);
        let (k, l) = pair.sa.full_rank_submatrix();
        let t = k.len();
        if t == 0 {
            return if syndrome.is_zero() {
                Ok(JennrichOutcome {
                    errors: ErrorSet::empty(self.params.m, self.params.p),
                    magnitudes: Vec::new(),
                    attempts: 1,
                    x: self.config.full_x.then(|| {
                        Matrix::zeros(index.field(), index.prefix_len(self.params.r as u32), 0)
                    }),
                })
            } else {
                Err(AttemptFailure::RankDeficient { rank: 0 })
            };
        }
        let sa_kl = pair.sa.select(k.as_slice(), l.as_slice());
        let sb_kl = pair.sb.select(k.as_slice(), l.as_slice());
        let sb_inv = sb_kl.inverse().ok_or(AttemptFailure::RankMismatch)?;
        let pairs = sa_kl.mul(&sb_inv).eigen_decompose().map_err(|e| match e {
            LinalgError::SpectrumNotSimple { distinct, dim } => {
                AttemptFailure::SpectrumNotSimple { distinct, dim }
            }
            LinalgError::NotSquare { .. } => unreachable!("minor is square"),
        })?;
        // Columns are X_K up to per-column scaling.
        let v = Matrix::from_fn(field, t, t, |i, j| pairs[j].vector[i]);
        let v_inv = v.inverse().ok_or(AttemptFailure::NotBaseField)?;
        let k_codes: Vec<u64> = k.iter().map(|i| index.code(i)).collect();

        // Row of X for the monomial `code`, still scaled by the unknown
        // column factors; dividing by the constant row removes them.
        let scaled_row = |code: u64| -> Vec<F::Elem> {
            let rhs: Vec<F::Elem> = k_codes
                .iter()
                .map(|&kc| {
                    let pos = index.position(index.mul_codes(kc, code)).expect("in range");
                    field.from_int(syndrome.entries()[pos])
                })
                .collect();
            v_inv.mul_vec(&rhs)
        };
        let base = scaled_row(0);
        let inv_base: Vec<F::Elem> = base
            .iter()
            .map(|&z| field.inv(z).ok_or(AttemptFailure::NotBaseField))
            .collect::<Result<_, _>>()?;
        let read_row = |code: u64| -> Result<Vec<u64>, AttemptFailure> {
            scaled_row(code)
                .iter()
                .zip(&inv_base)
                .map(|(&z, &w)| {
                    field
                        .to_prime(field.mul(z, w))
                        .ok_or(AttemptFailure::NotBaseField)
                })
                .collect()
        };

        let third = third_axis_codes(index);
        let mut points = vec![vec![0u64; self.params.m]; t];
        for (j, &code) in third.iter().enumerate().skip(1) {
            for (pt, c) in points.iter_mut().zip(read_row(code)?) {
                pt[j - 1] = c;
            }
        }
        let x = if self.config.full_x {
            let nr = index.prefix_len(self.params.r as u32);
            let rows = (0..nr)
                .map(|i| read_row(index.code(i)))
                .collect::<Result<Vec<_>, _>>()?;
            for (i, row) in rows.iter().enumerate() {
                for (pt, &v) in points.iter().zip(row) {
                    if index.eval_code(index.code(i), pt) != v {
                        return Err(AttemptFailure::Inconsistent);
                    }
                }
            }
            Some((rows, points.clone()))
        } else {
            None
        };

        let errors = ErrorSet::new(self.params.m, self.params.p, points)
            .map_err(|_| AttemptFailure::RepeatedPoint)?;
        let magnitudes = syndrome
            .solve_magnitudes(index, &errors)
            .map_err(|_| AttemptFailure::Residual)?
            .ok_or(AttemptFailure::Residual)?;
        let x = x.map(|(rows, unsorted)| {
            // Reorder columns to match the sorted error set.
            let order: Vec<usize> = errors
                .points()
                .iter()
                .map(|p| unsorted.iter().position(|q| q == p).expect("same set"))
                .collect();
            Matrix::from_fn(index.field(), rows.len(), t, |i, j| rows[i][order[j]])
        });
        Ok(JennrichOutcome {
            errors,
            magnitudes,
            attempts: 1,
            x,
        })
    }
}

/// One-shot decomposition with a fresh decoder.
pub fn decompose<R: Rng + ?Sized>(
    syndrome: &Syndrome,
    config: JennrichConfig,
    rng: &mut R,
) -> Result<JennrichOutcome, JennrichError> {
    JennrichDecoder::new(*syndrome.params(), config)?.decode(syndrome, rng)
}
