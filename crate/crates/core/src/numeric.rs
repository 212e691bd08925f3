//! High-precision arithmetic helpers: k-th roots of rationals with certified
//! error bounds, and logarithms of big integers.
//!
//! Fractional powers like x^(n/d) are computed as (x^n)^(1/d) where the root
//! is extracted by integer arithmetic at a fixed number of fractional bits,
//! so comparisons at relative tolerance 1e-9 are decided with orders of
//! magnitude to spare.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default fractional precision for root extraction, in bits.
pub const ROOT_PRECISION_BITS: u64 = 192;

/// Encloses the real k-th root of a nonnegative rational: `lo <= x^(1/k) <= hi`,
/// with `hi - lo <= 2^(1-bits)`.
pub fn nth_root_bounds(x: &BigRational, k: u32, bits: u64) -> Result<(BigRational, BigRational)> {
    if k == 0 {
        return Err(Error::Domain("0th root".into()));
    }
    if x.is_negative() {
        return Err(Error::Domain(format!("negative radicand {x}")));
    }
    let scale = BigUint::from(1u32) << bits;
    let num = x.numer().magnitude();
    let den = x.denom().magnitude();
    // floor(num * scale^k / den) has k-th root within one step of x^(1/k)*scale.
    let scaled = num * scale.pow(k) / den;
    let root = scaled.nth_root(k);
    let lo = BigRational::new(BigInt::from(root.clone()), BigInt::from(scale.clone()));
    let hi = BigRational::new(BigInt::from(root + 2u32), BigInt::from(scale));
    Ok((lo, hi))
}

/// log2 of a positive big integer, accurate to roughly one ulp of f64.
pub fn log2_biguint(x: &BigUint) -> f64 {
    debug_assert!(!x.is_zero());
    let bits = x.bits();
    if bits <= 53 {
        return x.to_f64().expect("fits in f64").log2();
    }
    let shift = bits - 53;
    let top = (x >> shift).to_f64().expect("53-bit mantissa fits");
    top.log2() + shift as f64
}

/// i^(2d/n) / (2^(d+1) - 1), the normalized extremal score of a census entry.
/// Computed in log space; exactness questions are settled by integer
/// comparisons elsewhere, this value is for reporting.
pub fn extremal_ratio(i_count: &BigUint, n: usize, d: usize) -> f64 {
    debug_assert!(n > 0 && d > 0);
    let bound = (BigUint::from(1u32) << (d + 1)) - 1u32;
    let log_score = (2.0 * d as f64 / n as f64) * log2_biguint(i_count) - log2_biguint(&bound);
    log_score.exp2()
}

/// Exact three-way comparison of i^(2d) against (2^(d+1)-1)^n, settling
/// whether i <= (2^(d+1)-1)^(n/2d) holds with equality, strictly, or fails.
pub fn compare_to_extremal_bound(i_count: &BigUint, n: usize, d: usize) -> std::cmp::Ordering {
    let lhs = i_count.pow(2 * d as u32);
    let bound = (BigUint::from(1u32) << (d + 1)) - 1u32;
    let rhs = bound.pow(n as u32);
    lhs.cmp(&rhs)
}
