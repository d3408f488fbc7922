use thiserror::Error;

use crate::specparse::SyntaxError;

/// Errors raised by series, array and sequence constructions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("powerseries: series is not invertible (constant term is zero)")]
    NotInvertible,
    #[error("powerseries: inner series of a composition must have zero constant term")]
    InnerNotDelta,
    #[error("powerseries: series is not a delta series (need f(0) = 0 and f'(0) != 0)")]
    NotDelta,
    #[error("{module}: domain violation: {detail}")]
    DomainViolation {
        module: &'static str,
        detail: String,
    },
    #[error("riordan: operands use different reference sequences")]
    MixedReferenceSequence,
    #[error("riordan: arrays have different sizes ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("determinantal: dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("determinantal: zero diagonal entry a[{0},{0}]")]
    ZeroDiagonal(usize),
    #[error("iterated: shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("reference sequence: c_{0} vanishes")]
    ZeroReference(usize),
    #[error("reference sequence: custom sequence has no value for index {0}")]
    ReferenceTooShort(usize),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("families: invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("families: unknown family `{0}`")]
    UnknownFamily(String),
    #[error("requested order {requested} exceeds available truncation order {available}")]
    TruncationTooShort { requested: usize, available: usize },
    #[error("monomiality: operators in the derivative need the exponential reference sequence")]
    NeedsExponentialReference,
    #[error("specparse: unbound parameter `{0}`")]
    UnboundParameter(String),
    #[error("specparse: {0}")]
    Syntax(#[from] SyntaxError),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(module: &'static str, detail: impl Into<String>) -> Error {
    Error::DomainViolation {
        module,
        detail: detail.into(),
    }
}
