use thiserror::Error;

/// Errors produced across the library.
///
/// Variants are grouped so a front end can map them onto distinct exit
/// statuses: caller mistakes, exhausted search budgets, and malformed input.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parameter mismatch: claim is for {claimed_blocks}x{claimed_points} but matrix is {blocks}x{points}")]
    ShapeMismatch {
        claimed_blocks: usize,
        claimed_points: usize,
        blocks: usize,
        points: usize,
    },

    #[error("search budget exceeded: {required} evaluations needed, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("no finite field of order {0} is available")]
    UnsupportedField(usize),

    #[error("random construction failed after {attempts} attempts")]
    AttemptsExhausted { attempts: usize },

    #[error("iteration did not converge within {iterations} steps (last width {width:e})")]
    NonConvergence { iterations: usize, width: f64 },

    #[error("search cap exceeded: no instance with at most {cap} points")]
    CapExceeded { cap: usize },

    #[error("malformed matrix file at line {line}: {message}")]
    Format { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precondition<T>(message: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(message.into()))
}
