use crate::braid::BraidError;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the analysis pipeline.
///
/// [`Error::is_internal`] separates broken inputs from violated internal
/// invariants; the command-line front end maps the two to distinct exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("braid diagram rejected: {}", join_braid_errors(.0))]
    Braid(Vec<BraidError>),
    #[error("complex with {cells} cells exceeds the cell budget of {budget}")]
    CellBudget { cells: u128, budget: u64 },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}

fn join_braid_errors(errs: &[BraidError]) -> String {
    errs.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; ")
}
