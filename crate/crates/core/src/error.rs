use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unsupported type: {0}")]
    UnsupportedType(String),
    #[error("group too large: {0} elements")]
    GroupTooLarge(usize),
    #[error("external table required: {0}")]
    ExternalTableRequired(String),
    #[error("MLS violation: {0}")]
    MlsViolation(String),
    #[error("Springer normalization error: {0}")]
    SpringerNormalization(String),
    #[error("no valid collapse: {0}")]
    NoValidCollapse(String),
    #[error("correspondence gap: {0}")]
    CorrespondenceGap(String),
    #[error("orbit/levi mismatch: {0}")]
    OrbitLeviMismatch(String),
    #[error("insufficient truncation: {0}")]
    InsufficientTruncation(String),
    #[error("degenerate sample: {0}")]
    DegenerateSample(String),
    #[error("form violation: {0}")]
    FormViolation(String),
    #[error("inconclusive sample: {0}")]
    InconclusiveSample(String),
    #[error("delta mismatch: {0}")]
    DeltaMismatch(String),
    #[error("incompatible pair: {0}")]
    IncompatiblePair(String),
    #[error("verification failure: {0}")]
    VerificationFailure(String),
    #[error("table error: {0}")]
    Table(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors the sampling oracle recovers from by resampling.
    pub fn is_resample(&self) -> bool {
        matches!(self, Error::DegenerateSample(_) | Error::InsufficientTruncation(_))
    }
}
