use thiserror::Error;

/// Errors raised by the certified pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A sign or ordering could not be decided from the enclosures at hand.
    #[error("undecidable sign: {0}")]
    UndecidableSign(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precision cap of {cap} bits exhausted while {what}")]
    PrecisionExhausted { cap: u32, what: String },

    #[error("inexact polynomial division")]
    InexactDivision,

    #[error("recognition failed: {0}")]
    RecognitionFailed(String),

    #[error("ambiguous root matching: {0}")]
    AmbiguousMatch(String),

    #[error("degenerate curve: {0}")]
    DegenerateCurve(String),

    #[error("singular quartic: {0}")]
    Singular(String),

    #[error("undecided: {0}")]
    Undecided(String),

    #[error("certificate invalid: {0}")]
    CertificateInvalid(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Prefix the message with the pipeline stage that raised it.
    pub fn in_stage(self, stage: &str) -> Error {
        let tag = |s: String| format!("[{stage}] {s}");
        match self {
            Error::UndecidableSign(s) => Error::UndecidableSign(tag(s)),
            Error::Domain(s) => Error::Domain(tag(s)),
            Error::InvalidArgument(s) => Error::InvalidArgument(tag(s)),
            Error::PrecisionExhausted { cap, what } => Error::PrecisionExhausted { cap, what: tag(what) },
            Error::InexactDivision => Error::InternalInconsistency(tag("inexact polynomial division".into())),
            Error::RecognitionFailed(s) => Error::RecognitionFailed(tag(s)),
            Error::AmbiguousMatch(s) => Error::AmbiguousMatch(tag(s)),
            Error::DegenerateCurve(s) => Error::DegenerateCurve(tag(s)),
            Error::Singular(s) => Error::Singular(tag(s)),
            Error::Undecided(s) => Error::Undecided(tag(s)),
            Error::CertificateInvalid(s) => Error::CertificateInvalid(tag(s)),
            Error::InternalInconsistency(s) => Error::InternalInconsistency(tag(s)),
        }
    }
}
