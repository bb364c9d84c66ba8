use thiserror::Error;

/// Errors raised by constructions, parsers and precondition checks.
///
/// Failed identities during certification are not errors; they are reported
/// through [`crate::report::Certificate`]. `Certification` is only used when an
/// operation must refuse to hand out an uncertified object.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("radicand mismatch: sqrt({0}) vs sqrt({1})")]
    RadicandMismatch(String, String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("degenerate design: k = lambda1 = {0}")]
    DegenerateDesign(u64),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("certification failed:\n{0}")]
    Certification(String),
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}
