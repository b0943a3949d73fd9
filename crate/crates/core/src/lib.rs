//! Exact numerical laboratory for a (3,5) threshold secret sharing scheme
//! that hands each of five participants one qubit of the five-qubit code.
//!
//! - [`quantum`]: pure states, density matrices, partial trace, entropy and
//!   trace distance, on top of the dense kernels in [`linalg`].
//! - [`code5`]: the two code words, Pauli action and the distance check.
//! - [`access`]: Holevo information per share subset, the full access
//!   structure, and classical and quantum reconstruction.
//! - [`classical`]: the classical share-size bound and a search over linear
//!   one-bit schemes.
//! - [`document`]: state files and report rendering.

pub mod access;
pub mod classical;
pub mod code5;
pub mod document;
pub mod error;
pub mod linalg;
pub mod quantum;
pub mod subset;

pub use error::{Error, Result};
pub use subset::ShareSubset;
