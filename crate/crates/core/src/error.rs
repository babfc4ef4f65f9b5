use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    /// The input does not belong to the domain of the map that was called.
    #[error("input is not in {domain}: {reason}")]
    Domain { domain: String, reason: String },

    #[error("census of size {requested} exceeds the budget of {budget}")]
    BudgetExceeded { requested: usize, budget: usize },
}

impl Error {
    pub(crate) fn domain(domain: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Domain {
            domain: domain.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn params(msg: impl Into<String>) -> Self {
        Error::InvalidParameters(msg.into())
    }
}
