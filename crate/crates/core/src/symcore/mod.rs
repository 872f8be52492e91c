//! Exact scalar engine: charts, canonical rational functions, the
//! expression parser and seeded random polynomials.

mod chart;
mod expr;
pub mod gcd;
mod parse;
pub mod poly;
pub mod random;

pub use chart::Chart;
pub use expr::{Expr, ExprDisplay};
pub use parse::parse;
pub use random::random_poly;

/// Arbitrary-precision rational coefficient.
pub type Rational = num_rational::BigRational;

/// `n / d` as a [`Rational`].
pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
