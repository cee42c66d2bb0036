use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },
    #[error("weight mismatch: {0} vs {1}")]
    WeightMismatch(usize, usize),
    #[error("ambient mismatch: [{0}] vs [{1}]")]
    AmbientMismatch(usize, usize),
    #[error("{lower} is not below {upper} in the partition lattice")]
    NotRefinement { lower: String, upper: String },
    #[error("element {element} outside of 1..{bound}")]
    OutOfRange { element: usize, bound: usize },
    #[error("not a poset: {0}")]
    NotPoset(String),
    #[error("not symmetric: coefficients of M{0} and M{1} differ")]
    NotSymmetric(String, String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("singular transition matrix for {0} (degree {1})")]
    Singular(&'static str, usize),
}

impl Error {
    pub(crate) fn parse(what: &'static str, input: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            what,
            input: input.to_string(),
            reason: reason.into(),
        }
    }

    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// True for malformed-input errors, false for domain precondition failures.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. } | Error::OutOfRange { .. } | Error::WeightMismatch(..)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
