use thiserror::Error;

use crate::scalar::Field;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the toolkit can report.
///
/// The classification variants (`NotParabolic`, `NotGammaMax`, ...) are
/// *rejections*: the input was well formed but did not certify against the
/// requested canonical target.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("{0} is not prime (or exceeds 2^32)")]
    InvalidPrime(u64),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is not idempotent")]
    NotIdempotent,
    #[error("subspace is not closed under multiplication")]
    NotClosed,
    #[error("invalid index: {0}")]
    InvalidIndex(String),
    #[error("basis element has nonzero last row or column")]
    NotInCorner,
    #[error("operation requires characteristic zero, got {0}")]
    WrongCharacteristic(Field),
    #[error("certification failed: {0}")]
    CertificationFailed(String),
    #[error("expected a rank-one matrix, got rank {0}")]
    WrongRank(usize),
    #[error("rank-one frame violated: {0}")]
    FrameViolation(String),
    #[error("not a conjugate of a maximal parabolic: {0}")]
    NotParabolic(String),
    #[error("not a maximum-dimension nonunital subalgebra: {0}")]
    NotMaxNonunital(String),
    #[error("not a maximum-dimension nonunital intersection: {0}")]
    NotGammaMax(String),
    #[error("not a maximum-dimension member of Omega: {0}")]
    NotOmegaMax(String),
    #[error("not in Omega: {0}")]
    NotInOmega(String),
    #[error("n = {0} is too small (need n >= {1})")]
    DimensionTooSmall(usize, usize),
    #[error("unknown suite: {0}")]
    UnknownSuite(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for typed classification rejections (as opposed to malformed input).
    pub fn is_rejection(&self) -> bool {
        matches!(
            self,
            Error::NotParabolic(_)
                | Error::NotMaxNonunital(_)
                | Error::NotGammaMax(_)
                | Error::NotOmegaMax(_)
                | Error::NotInOmega(_)
                | Error::FrameViolation(_)
                | Error::CertificationFailed(_)
                | Error::DimensionTooSmall(..)
                | Error::WrongRank(_)
                | Error::NotIdempotent
                | Error::NotInCorner
                | Error::SingularMatrix
        )
    }
}
