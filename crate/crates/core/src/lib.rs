//! Burnside groups of links and the obstructions they give to rational
//! tangle moves.

pub mod abelian;
pub mod diagram;
pub mod error;
pub mod liering;
pub mod obstruct;
pub mod pcgroup;
pub mod presentation;
pub mod reproduce;

pub use error::{Error, Result};

/// Rational tangle slope with arbitrary-precision entries.
pub type Slope = diagram::SlopeOf<num_bigint::BigInt>;

/// Integer matrix with arbitrary-precision entries.
pub type IntMatrix = abelian::IntMatrixOf<num_bigint::BigInt>;
/// Finitely generated abelian group with arbitrary-precision invariants.
pub type AbelianType = abelian::AbelianTypeOf<num_bigint::BigInt>;
