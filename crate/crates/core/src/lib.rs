//! Exact computations around the stable cohomology of diffeomorphism and
//! Torelli groups of `W_g^{2n} = #^g (S^n x S^n)`.
//!
//! Everything here is exact: rationals are `BigRational`, integer matrices
//! are `BigInt`, and Hilbert series are truncated coefficient vectors.

pub mod arithmetic_groups;
pub mod borel;
pub mod char_classes;
pub mod error;
pub mod graded_algebra;
pub mod invariants;
pub mod mt_cohomology;

pub use error::{Error, Result};
pub use graded_algebra::{
    format_rational, rat, GradedGenerator, HilbertSeries, Monomial, Parity, Rational,
    WeightedPolynomial,
};
