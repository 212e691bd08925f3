//! Exact machinery for the extremal problem of maximizing independent-set
//! counts in d-regular graphs: counting, the size-preserving pair bijection,
//! exhaustive small-graph censuses, and the entropy-method constants.

pub mod bounds;
pub mod canon;
pub mod census;
pub mod entropy;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod isets;
pub mod numeric;
pub mod scalar;
pub mod zhao;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};

/// Floating-point scalar used by the entropy pipeline.
pub type Real = f64;
/// Exact rational scalar used for polynomial identities.
pub type Rational = num_rational::BigRational;
/// Arbitrary-precision set count.
pub type Count = num_bigint::BigUint;
