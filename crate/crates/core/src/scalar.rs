//! Numeric domains for evaluating counting polynomials.
//!
//! Counting itself is always exact (big integers); evaluation is generic so
//! the same code serves exact rational queries and floating-point ones. The
//! crate root exports `Real` and `Rational` as the concrete choices.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// A scalar a counting polynomial can be evaluated at.
pub trait Scalar:
    Clone + PartialOrd + Zero + One + std::ops::Add<Output = Self> + std::ops::Mul<Output = Self>
{
    /// Injects an exact nonnegative count into the scalar domain.
    fn from_count(c: &BigUint) -> Self;
}

impl Scalar for f64 {
    fn from_count(c: &BigUint) -> f64 {
        c.to_f64().unwrap_or(f64::INFINITY)
    }
}

impl Scalar for BigRational {
    fn from_count(c: &BigUint) -> BigRational {
        BigRational::from_integer(BigInt::from(c.clone()))
    }
}
