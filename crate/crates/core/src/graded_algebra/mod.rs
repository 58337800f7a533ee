//! Foundation types: exact rationals, truncated Hilbert series of free
//! graded-commutative algebras, and weighted multivariate polynomials.

mod polynomial;
mod series;

pub use polynomial::{Monomial, WeightedPolynomial};
pub use series::{
    free_graded_commutative_series, series_pointwise_equal, GradedGenerator, HilbertSeries, Parity,
};

use num_bigint::BigInt;

/// Arbitrary-precision rational, always stored reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for the rational `num/den`.
///
/// Panics if `den` is zero.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Renders a rational canonically as `num/den`, even for integers.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}
