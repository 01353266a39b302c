use alloc::string::String;

/// Errors raised by the core routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Shapes, lengths or preconditions on the inputs do not line up.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A scalar argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// The requested object would exceed a configured size cap.
    #[error("size limit exceeded: {what} needs {requested}, cap is {cap}")]
    SizeLimit {
        what: &'static str,
        requested: u128,
        cap: u128,
    },
    /// A truncation level is out of order or beyond the cap.
    #[error("level error: {0}")]
    Level(String),
    /// Iterative eigen-solver failed to converge.
    #[error("eigen-solver did not converge after {0} iterations")]
    NoConvergence(usize),
}

pub type Result<T> = core::result::Result<T, Error>;

macro_rules! invalid {
    ($($arg:tt)*) => {
        $crate::Error::InvalidInput(alloc::format!($($arg)*))
    };
}

macro_rules! domain {
    ($($arg:tt)*) => {
        $crate::Error::Domain(alloc::format!($($arg)*))
    };
}

pub(crate) use domain;
pub(crate) use invalid;
