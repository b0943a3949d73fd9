use thiserror::Error;

use crate::subset::ShareSubset;

/// Errors raised by the laboratory.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument violated an operation's precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// Structured input (state documents, subsets, Pauli strings) could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// A subset matched neither the qualified nor the forbidden predicate.
    #[error("subset {subset} is indeterminate: holevo {holevo_bits:e} bits, trace distance {trace_dist:e}")]
    Indeterminate {
        subset: ShareSubset,
        holevo_bits: f64,
        trace_dist: f64,
    },

    /// The complement of the subset holds information about the secret, so
    /// the secret cannot be recovered from the subset alone.
    #[error("subset {0} is unqualified")]
    Unqualified(ShareSubset),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
