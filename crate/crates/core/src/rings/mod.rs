//! Exact coefficient rings: integer Laurent polynomials in `A` and rational
//! power series in `h` truncated at a fixed order, joined by the expansion
//! `A -> -exp(h/4)`.

mod laurent;
mod series;
pub mod text;

pub use laurent::LaurentPolynomial;
pub use series::{expand_laurent, h_valuation, TruncatedSeries, Valuation};

pub use num_rational::BigRational as Rational;
