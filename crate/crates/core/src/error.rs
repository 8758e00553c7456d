use thiserror::Error;

/// Errors raised anywhere in the toolkit.
///
/// Variant names double as the `kind` field of the structured JSON errors
/// emitted by the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("parse error: {0}")]
    ParseError(String),
    #[error("quotient is not Artinian: no pure power of `{0}` is a leading term")]
    NotArtinian(String),
    #[error("ring or module is not graded: {0}")]
    NotGraded(String),
    #[error("unit ideal: {0}")]
    UnitIdeal(String),
    #[error("ideal is not homogeneous: {0}")]
    NonHomogeneousIdeal(String),
    #[error("variable mismatch: {0}")]
    VariableMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("I ∩ m² ≠ mI: {0}")]
    NCViolation(String),
    #[error("ring is not a complete intersection")]
    NotCompleteIntersection,
    #[error("ring is not a power of the maximal ideal of a polynomial ring")]
    NotPowerOfMaximalIdeal,
    #[error("homological degree {0} out of range")]
    DegreeOutOfRange(usize),
    #[error("series has non-unit constant term")]
    NonUnitConstantTerm,
    #[error("inconsistent series: {0}")]
    InconsistentSeries(String),
    #[error("chain map lift failed: {0}")]
    LiftFailure(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

impl Error {
    /// Stable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::ParseError(_) => "ParseError",
            Error::NotArtinian(_) => "NotArtinian",
            Error::NotGraded(_) => "NotGraded",
            Error::UnitIdeal(_) => "UnitIdeal",
            Error::NonHomogeneousIdeal(_) => "NonHomogeneousIdeal",
            Error::VariableMismatch(_) => "VariableMismatch",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::NCViolation(_) => "NCViolation",
            Error::NotCompleteIntersection => "NotCompleteIntersection",
            Error::NotPowerOfMaximalIdeal => "NotPowerOfMaximalIdeal",
            Error::DegreeOutOfRange(_) => "DegreeOutOfRange",
            Error::NonUnitConstantTerm => "NonUnitConstantTerm",
            Error::InconsistentSeries(_) => "InconsistentSeries",
            Error::LiftFailure(_) => "LiftFailure",
            Error::InternalInconsistency(_) => "InternalInconsistency",
        }
    }

    /// Module that raises this error.
    pub fn module(&self) -> &'static str {
        match self {
            Error::NotPrime(_) | Error::DimensionMismatch(_) => "exactla",
            Error::ParseError(_)
            | Error::NotArtinian(_)
            | Error::UnitIdeal(_)
            | Error::NonHomogeneousIdeal(_)
            | Error::VariableMismatch(_) => "ringcore",
            Error::NCViolation(_) | Error::NotPowerOfMaximalIdeal | Error::DegreeOutOfRange(_) => "koszul",
            Error::NotGraded(_) | Error::LiftFailure(_) => "resolve",
            Error::NonUnitConstantTerm | Error::InconsistentSeries(_) => "series",
            Error::NotCompleteIntersection | Error::InternalInconsistency(_) => "criteria",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
