//! Process exit codes and the mapping from library errors onto them.

use std::fmt;
use std::process::ExitCode;

use rms_core::jennrich::JennrichError;
use rms_core::polyspace::PolyspaceError;
use rms_core::rm::RmError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    DecodeFailure = 2,
    InvalidInput = 3,
    ParameterBounds = 4,
}

impl From<Exit> for ExitCode {
    fn from(e: Exit) -> Self {
        ExitCode::from(e as u8)
    }
}

/// An error tagged with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub exit: Exit,
    pub error: anyhow::Error,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#}", self.error)
    }
}

impl Failure {
    pub fn new(exit: Exit, error: impl Into<anyhow::Error>) -> Self {
        Self {
            exit,
            error: error.into(),
        }
    }

    pub fn input(msg: impl fmt::Display) -> Self {
        Self::new(Exit::InvalidInput, anyhow::anyhow!("{msg}"))
    }

    pub fn context(self, msg: impl fmt::Display + Send + Sync + 'static) -> Self {
        Self {
            exit: self.exit,
            error: self.error.context(msg),
        }
    }
}

pub fn rm_exit(e: &RmError) -> Exit {
    match e {
        RmError::Params(_) | RmError::SamplingFailed { .. } | RmError::Field(_) => {
            Exit::ParameterBounds
        }
        _ => Exit::InvalidInput,
    }
}

impl From<RmError> for Failure {
    fn from(e: RmError) -> Self {
        Self::new(rm_exit(&e), e)
    }
}

impl From<JennrichError> for Failure {
    fn from(e: JennrichError) -> Self {
        let exit = match &e {
            JennrichError::Failed { .. } | JennrichError::UrViolation(_) => Exit::DecodeFailure,
            JennrichError::Rm(inner) => rm_exit(inner),
            _ => Exit::ParameterBounds,
        };
        Self::new(exit, e)
    }
}

impl From<PolyspaceError> for Failure {
    fn from(e: PolyspaceError) -> Self {
        let exit = match &e {
            PolyspaceError::Rm(inner) => rm_exit(inner),
            PolyspaceError::Multilinear(_) => Exit::ParameterBounds,
            _ => Exit::DecodeFailure,
        };
        Self::new(exit, e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self::new(Exit::InvalidInput, e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Self::new(Exit::InvalidInput, e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Self::new(Exit::InvalidInput, e)
    }
}
