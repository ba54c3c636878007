//! Exact integer/rational arithmetic: univariate polynomials over ℤ and ℚ and
//! small dense rational matrices with exact characteristic polynomials.
//!
//! Integers and rationals are `num-bigint` / `num-rational` values; this module
//! only adds the polynomial and linear-algebra layer on top.

mod matrix;
mod poly;
mod ratpoly;

pub use matrix::RatMatrix;
pub(crate) use poly::format_terms;
pub use poly::IntPoly;
pub use ratpoly::RatPoly;

/// Arbitrary precision signed integer.
pub type Integer = num_bigint::BigInt;
/// Reduced fraction of [`Integer`]s with positive denominator.
pub type Rational = num_rational::BigRational;

use num_traits::One;

pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(Integer::from(n))
}

/// Least common multiple of the denominators of `qs` (1 for an empty slice).
pub fn denominator_lcm<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> Integer {
    use num_integer::Integer as _;
    qs.into_iter().fold(Integer::one(), |acc, q| acc.lcm(q.denom()))
}

/// Decimal string form used by every JSON surface.
pub fn int_to_string(n: &Integer) -> String {
    n.to_str_radix(10)
}
