use thiserror::Error;

/// Errors raised by constructors, checkers and the serialization layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Argument outside the domain of an operation (negative radicand, odd size, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Incompatible matrix shapes.
    #[error("dimension mismatch in {op}: {detail}")]
    Dimension { op: &'static str, detail: String },

    /// An input does not satisfy a stated precondition.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// The requested combination mode cannot be applied to these blocks.
    #[error("mode error: {0}")]
    Mode(String),

    /// A construction form was refused because its output is provably wrong.
    #[error("refused: {reason} (Gram defect: {defect})")]
    Refused { reason: String, defect: String },

    /// A two-row value table violates its sum identities.
    #[error("invalid two-row table: {}", .problems.join("; "))]
    Validation { problems: Vec<String> },

    /// Malformed textual or JSON input.
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    /// Input too large for exhaustive processing.
    #[error("resource limit: {0}")]
    Resource(String),
}

impl Error {
    pub(crate) fn dimension(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Dimension {
            op,
            detail: detail.into(),
        }
    }

    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
