use alloc::string::String;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A computation could not reach its accuracy target.
    #[error("numerical failure: {0}")]
    Numerical(String),
    /// Malformed input text; `line` is 1-based.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    /// Two evaluations of the same quantity disagree beyond rounding.
    #[error("sign convention mismatch: {0}")]
    SignConvention(String),
    /// A precondition on the inputs does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = core::result::Result<T, Error>;
