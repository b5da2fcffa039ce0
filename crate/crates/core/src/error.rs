use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or mismatched input (wrong lengths, unknown indices, ...).
    #[error("invalid input: {0}")]
    Input(String),
    /// An exact oracle or enumeration would exceed its configured cap.
    #[error("size cap exceeded: {what} needs {needed}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        needed: String,
        cap: String,
    },
    /// A reduction or solver was called outside its stated domain.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A randomized construction failed to produce a verified object.
    #[error("construction failed: {0}")]
    Construction(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}

pub(crate) fn cap<T>(what: &'static str, needed: impl ToString, cap: impl ToString) -> Result<T> {
    Err(Error::CapExceeded {
        what,
        needed: needed.to_string(),
        cap: cap.to_string(),
    })
}
