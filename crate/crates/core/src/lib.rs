//! Exact q- and (q,t)-Stirling numbers of both kinds, the Stirling posets with
//! their Morse matchings and Boolean decompositions, the integer homology of
//! the chain complexes they support, and the sign-reversing involutions behind
//! the orthogonality relations.
//!
//! Polynomial-valued code is generic over the coefficient ring (any
//! [`qtpoly::Ring`]); the aliases below fix it to arbitrary-precision integers,
//! which is what the CLI and the verification suites use.

pub mod error;
pub mod homology;
pub mod orthogonal;
pub mod posets;
pub mod qtpoly;
pub mod rgwords;
pub mod rookboards;
pub mod stirlingnum;
pub mod verify;

pub use error::{Error, Result};
pub use num_bigint::BigInt;

/// Bivariate polynomial in `q`, `t` with big-integer coefficients.
pub type BiPoly = qtpoly::Poly<BigInt>;
/// Polynomial in `x` whose coefficients are [`BiPoly`] values.
pub type BiXPoly = stirlingnum::XPoly<BigInt>;
/// Stirling table with big-integer polynomial entries.
pub type BiStirlingTable = stirlingnum::StirlingTable<BigInt>;
/// Boundary matrix with big-integer entries.
pub type BiMatrix = homology::IntMatrix<BigInt>;

/// Default cap on word length / board length for exhaustive enumeration.
pub const DEFAULT_MAX_N: usize = 20;
/// Default cap on the number of elements in a materialized poset.
pub const DEFAULT_MAX_ELEMENTS: usize = 200_000;
