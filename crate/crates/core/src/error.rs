use alloc::string::String;

/// Errors raised by the algebra core.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The matrices handed in as a basis are linearly dependent.
    #[error("invalid basis: element {index} depends on the previous ones")]
    InvalidBasis { index: usize },

    /// A structure-constant table violates an algebra axiom on a basis triple.
    #[error("invalid algebra: {reason} at basis triple ({}, {}, {})", .triple.0, .triple.1, .triple.2)]
    InvalidAlgebra {
        reason: &'static str,
        triple: (usize, usize, usize),
    },

    #[error("resource limit: {what} needs {needed}, bound is {bound}")]
    ResourceLimit {
        what: &'static str,
        needed: String,
        bound: u64,
    },

    /// A mathematical guarantee failed at runtime. Always a bug or a bad input
    /// that slipped past validation; never silently recovered.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;

macro_rules! invalid {
    ($($arg:tt)*) => {
        $crate::error::Error::InvalidArgument(alloc::format!($($arg)*))
    };
}

macro_rules! internal {
    ($($arg:tt)*) => {
        $crate::error::Error::Internal(alloc::format!($($arg)*))
    };
}

pub(crate) use internal;
pub(crate) use invalid;
