use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Read { path: String, message: String },
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    #[error("cannot write {path}: {message}")]
    Write { path: String, message: String },
    #[error("verification failed")]
    VerifyFailed,
    #[error(transparent)]
    Core(#[from] specfact::Error),
}

impl CliError {
    pub fn read(path: &Path, e: impl ToString) -> Self {
        CliError::Read {
            path: path.display().to_string(),
            message: e.to_string(),
        }
    }

    pub fn parse(path: &Path, e: impl ToString) -> Self {
        CliError::Parse {
            path: path.display().to_string(),
            message: e.to_string(),
        }
    }

    pub fn write(path: &Path, e: impl ToString) -> Self {
        CliError::Write {
            path: path.display().to_string(),
            message: e.to_string(),
        }
    }

    /// 1 failed verification, 2 unreadable input, 3 not a spectrum,
    /// 4 numeric tolerance exceeded, 5 internal.
    pub fn exit_code(&self) -> u8 {
        use specfact::Error as E;
        match self {
            CliError::VerifyFailed => 1,
            CliError::Read { .. } | CliError::Parse { .. } => 2,
            CliError::Write { .. } => 5,
            CliError::Core(e) => match e {
                E::Dimension(_) | E::InvalidRegion(_) | E::InvalidDecomposition(_) => 2,
                E::NotASpectrum(_)
                | E::RankZero
                | E::OddOnCircleMultiplicity(_)
                | E::OnCircleForbidden(_)
                | E::OnCircleAmbiguous
                | E::NotPDOnCircle
                | E::NotPositiveDefinite(_) => 3,
                E::NumericFallbackExceededTolerance { .. } | E::UnresolvableCircleProximity { .. } => 4,
                _ => 5,
            },
        }
    }
}
