//! Algorithm selection shared by `decode` and `experiment`.

use clap::ValueEnum;
use rand::Rng;
use serde::Serialize;

use rms_core::jennrich::{JennrichConfig, JennrichDecoder, JennrichMode};
use rms_core::polyspace::{PolyspaceDecoder, PolyspaceMode};
use rms_core::rm::{CodeParams, ErrorSet, Syndrome};

use crate::exit::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algo {
    Jennrich,
    Polyspace,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Jennrich => "jennrich",
            Algo::Polyspace => "polyspace",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Rand,
    Derand,
    Det,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Rand => "rand",
            Mode::Derand => "derand",
            Mode::Det => "det",
        }
    }
}

pub enum AnyDecoder {
    Jennrich(JennrichDecoder),
    Polyspace(PolyspaceDecoder),
}

#[derive(Debug, Clone)]
pub struct Decoded {
    pub errors: ErrorSet,
    pub magnitudes: Vec<u64>,
    /// Jennrich: flattening draws. Polyspace: isolation rounds or
    /// restrictions.
    pub work: usize,
}

impl AnyDecoder {
    pub fn new(
        params: CodeParams,
        algo: Algo,
        mode: Mode,
        ext_degree: Option<u32>,
    ) -> Result<Self, Failure> {
        Ok(match (algo, mode) {
            (Algo::Jennrich, Mode::Det) => {
                return Err(Failure::input("jennrich supports --mode rand or derand"));
            }
            (Algo::Jennrich, mode) => {
                let config = JennrichConfig {
                    mode: if mode == Mode::Rand {
                        JennrichMode::Randomized
                    } else {
                        JennrichMode::Derandomized
                    },
                    ext_degree,
                    ..Default::default()
                };
                AnyDecoder::Jennrich(JennrichDecoder::new(params, config)?)
            }
            (Algo::Polyspace, Mode::Derand) => {
                return Err(Failure::input("polyspace supports --mode rand or det"));
            }
            (Algo::Polyspace, mode) => {
                let mode = if mode == Mode::Rand {
                    PolyspaceMode::Randomized
                } else {
                    PolyspaceMode::Deterministic
                };
                AnyDecoder::Polyspace(PolyspaceDecoder::new(params, mode)?)
            }
        })
    }

    pub fn decode<R: Rng + ?Sized>(
        &self,
        syndrome: &Syndrome,
        rng: &mut R,
    ) -> Result<Decoded, Failure> {
        match self {
            AnyDecoder::Jennrich(d) => {
                let out = d
                    .decode(syndrome, rng)
                    .map_err(|e| Failure::from(e).context("stage decompose"))?;
                Ok(Decoded {
                    errors: out.errors,
                    magnitudes: out.magnitudes,
                    work: out.attempts,
                })
            }
            AnyDecoder::Polyspace(d) => {
                let out = d
                    .decode(syndrome, rng)
                    .map_err(|e| Failure::from(e).context("stage find_roots"))?;
                Ok(Decoded {
                    errors: out.errors,
                    magnitudes: out.magnitudes,
                    work: out.iterations,
                })
            }
        }
    }
}
