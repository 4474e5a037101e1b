//! Exact rational coefficients.
//!
//! All series coefficients are unbounded rationals kept in lowest terms with
//! a positive denominator; `BigRational` maintains both invariants on every
//! operation, so the alias is the whole story.

use num_bigint::BigInt;

pub type Rational = num_rational::BigRational;

/// Integer as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Fraction `n/d` (normalised by the constructor).
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}
