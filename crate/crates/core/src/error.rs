use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("column {0} is identically zero")]
    ZeroColumn(usize),
    #[error("row {0} is identically zero")]
    ZeroRow(usize),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("point lies on the unit circle, which the open region does not assign")]
    OnCircleAmbiguous,
    #[error("root with modulus {modulus} is within tolerance of the unit circle but no exact on-circle factor divides the polynomial")]
    UnresolvableCircleProximity { modulus: f64 },
    #[error("on-circle root has odd multiplicity in diagonal entry {0}")]
    OddOnCircleMultiplicity(usize),
    #[error("on-circle {0} present but the region includes the unit circle")]
    OnCircleForbidden(&'static str),
    #[error("invalid region: {0}")]
    InvalidRegion(String),
    #[error("division not exact: {0}")]
    DivisionNotExact(String),
    #[error("not positive definite on the unit circle (sampled)")]
    NotPDOnCircle,
    #[error("degree reduction stalled: {0}")]
    DegreeNotReduced(String),
    #[error("leading principal minor {0} is not positive")]
    NotPositiveDefinite(usize),
    #[error("not a spectrum: {0}")]
    NotASpectrum(String),
    #[error("normal rank is zero")]
    RankZero,
    #[error("numeric fallback residual {residual:e} exceeds tolerance {tol:e}")]
    NumericFallbackExceededTolerance { residual: f64, tol: f64 },
    #[error("matrix is not para-unitary")]
    NotParaUnitary,
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Errors that indict the input rather than the implementation.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::NotASpectrum(_)
                | Error::RankZero
                | Error::OddOnCircleMultiplicity(_)
                | Error::NotPDOnCircle
                | Error::NotPositiveDefinite(_)
                | Error::OnCircleForbidden(_)
                | Error::InvalidRegion(_)
                | Error::Dimension(_)
                | Error::InvalidDecomposition(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
