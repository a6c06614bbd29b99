//! Exact combinatorics for the unipotent principal-series theta
//! correspondence over finite fields.
//!
//! The crate is organised bottom-up:
//!
//! * [`partitions`]: decorated bipartitions, component groups, relevant quintuples
//! * [`matchings`]: orbit labels and the local type of each simple reflection
//! * [`hecke`]: Laurent polynomials and the generic Hecke action on standard bases
//! * [`kl`]: Kazhdan-Lusztig bases, W-graphs, cells
//! * [`fourier`]: Fourier orbit bijections and the glued oscillator bimodule
//! * [`weylreps`]: characters, Springer labels, theta decompositions
//! * [`oracle`]: brute-force finite-field checks
//! * [`verify`]: named check suites
//! * [`cli`]: the `theta-lab` command line

pub mod cli;
pub mod fourier;
pub mod hecke;
pub mod kl;
pub(crate) mod linalg;
pub mod matchings;
pub mod oracle;
pub mod verify;
pub mod partitions;
pub mod weylreps;

pub use hecke::LaurentPoly;
pub use matchings::{Matching, Model, Refl};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// An internal consistency check failed; the message names the offending data.
    #[error("consistency check failed: {0}")]
    Inconsistent(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
}

pub type Result<T> = std::result::Result<T, Error>;
