//! Exact counting polynomials for orbits of g-tuples of nilpotent matrices
//! over finite fields under simultaneous conjugation.
//!
//! The crate is layered bottom-up:
//!
//! - [`exactnum`]: rationals, polynomials, rational functions and truncated
//!   power series in `q`.
//! - [`partitions`]: integer partitions and the q-combinatorial quantities
//!   indexed by them.
//! - [`series`]: truncated power series in `X` over rational functions in `q`.
//! - [`pipeline`]: the chain `P -> H -> A -> I -> M` plus identity verifiers.
//! - [`fforacle`]: brute-force enumeration over small finite fields.
//! - [`cli`]: the `nilorb` command-line front end.

pub mod cli;
pub mod error;
pub mod exactnum;
pub mod fforacle;
pub mod partitions;
pub mod pipeline;
pub mod series;

pub use error::{Error, Result};
pub use exactnum::{BigInt, BigRat, PolyQ, RationalFunctionQ, TruncatedQSeries};
pub use partitions::Partition;

pub use pipeline::{CountingPolynomial, Kind, Pipeline, VerificationReport};
pub use series::TruncatedXSeries;

/// Version string recorded in result envelopes and cache keys.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
