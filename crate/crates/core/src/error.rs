use thiserror::Error;

/// Errors reported by constructors, solvers and verifiers.
///
/// `Precondition` marks inputs outside a solver's guaranteed regime;
/// `TheoremViolation` marks an internal assertion derived from a theorem
/// failing, which means either a bug or a genuine counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("refused: {0}")]
    Refused(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! invalid {
    ($($arg:tt)*) => { $crate::error::Error::InvalidInput(format!($($arg)*)) };
}
macro_rules! precondition {
    ($($arg:tt)*) => { $crate::error::Error::Precondition(format!($($arg)*)) };
}
macro_rules! violation {
    ($($arg:tt)*) => { $crate::error::Error::TheoremViolation(format!($($arg)*)) };
}

pub(crate) use invalid;
pub(crate) use precondition;
pub(crate) use violation;
