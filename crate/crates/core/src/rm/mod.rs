//! Reed-Muller codes `RM(m, m(p-1) - 2r - 2)` over `F_p` viewed through
//! their syndromes: the parity checks are the evaluation vectors of all
//! reduced monomials of degree at most `2r + 1`, so the syndrome of a word
//! `y` is `sum_x y(x) x^{⊗≤2r+1}`.

mod io;
mod points;
mod syndrome;
mod word;

pub use io::{
    read_sidecar, read_word, sidecar_path, word_file_len, write_sidecar, write_word, Sidecar,
    SyndromeFile,
};
pub use points::{
    has_property_ur, point_from_index, point_index, sample_error_set, ErrorSet, SampledErrors,
};
pub use syndrome::{syndrome_streaming, Syndrome, SyndromeAccumulator};
pub use word::{corrupt, encode, ReceivedWord};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{FieldError, PrimeField};
use crate::multilinear::{MonomialIndex, MultilinearError};

/// Largest word length (in symbols) handled in memory.
pub const MAX_WORD_LEN: u64 = 1 << 32;

#[derive(Debug, Error)]
pub enum RmError {
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("point {0:?} is not in F_p^m")]
    BadPoint(Vec<u64>),
    #[error("error set has repeated points")]
    RepeatedPoint,
    #[error(
        "U_r sampling failed after {attempts} attempts (t = {t} is too large for these parameters)"
    )]
    SamplingFailed { t: usize, attempts: usize },
    #[error("stream length mismatch: expected {expected} symbols, got {got}")]
    StreamLength { expected: u64, got: u64 },
    #[error("symbol {0} is not a field element")]
    BadSymbol(u64),
    #[error("polynomial degree {degree} exceeds the code degree {max}")]
    DegreeTooHigh { degree: u32, max: u32 },
    #[error("syndrome does not match the code parameters")]
    SyndromeShape,
    #[error(transparent)]
    Multilinear(#[from] MultilinearError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Code parameters `(m, r, p)`. The decoders need `m >= 2r + 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CodeParams {
    pub m: usize,
    pub r: usize,
    pub p: u64,
}

impl CodeParams {
    pub fn new(m: usize, r: usize, p: u64) -> Result<Self, RmError> {
        let params = Self { m, r, p };
        params.validate()?;
        Ok(params)
    }

    pub fn binary(m: usize, r: usize) -> Result<Self, RmError> {
        Self::new(m, r, 2)
    }

    pub fn validate(&self) -> Result<(), RmError> {
        PrimeField::new(self.p)?;
        if self.m < 2 * self.r + 2 {
            return Err(RmError::Params(format!(
                "need m >= 2r + 2, got m = {}, r = {}",
                self.m, self.r
            )));
        }
        if (self.p as u128).pow(self.m as u32) > u64::MAX as u128 {
            return Err(RmError::Params(format!(
                "{}^{} points do not fit in 64 bits",
                self.p, self.m
            )));
        }
        Ok(())
    }

    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.p).expect("validated prime")
    }

    /// Block length `p^m`.
    pub fn n(&self) -> u64 {
        self.p.pow(self.m as u32)
    }

    /// Degree of the code: `m(p - 1) - 2r - 2`.
    pub fn code_degree(&self) -> u32 {
        (self.m as u64 * (self.p - 1)) as u32 - 2 * self.r as u32 - 2
    }

    /// Monomials indexing the syndrome: degree at most `2r + 1`.
    pub fn syndrome_index(&self) -> Result<MonomialIndex, RmError> {
        Ok(MonomialIndex::new(self.m, 2 * self.r as u32 + 1, self.p)?)
    }

    pub fn syndrome_len(&self) -> usize {
        MonomialIndex::count(self.m, 2 * self.r as u32 + 1, self.p)
    }

    pub(crate) fn check_word_len(&self) -> Result<(), RmError> {
        if self.n() > MAX_WORD_LEN {
            return Err(RmError::Params(format!(
                "block length {}^{} is too large for in-memory words",
                self.p, self.m
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_validation() {
        assert!(CodeParams::binary(4, 1).is_ok());
        assert!(CodeParams::binary(3, 1).is_err());
        assert!(CodeParams::new(4, 1, 4).is_err());
        assert!(CodeParams::binary(64, 1).is_err());
        let c = CodeParams::binary(10, 1).unwrap();
        assert_eq!(c.n(), 1024);
        assert_eq!(c.code_degree(), 6);
        assert_eq!(c.syndrome_len(), 1 + 10 + 45 + 120);
        let c3 = CodeParams::new(4, 1, 3).unwrap();
        assert_eq!(c3.code_degree(), 4);
    }
}
