//! Prime-counting integrals, their remainder terms, certified constants, and
//! numerical verification of the associated effective inequalities.

// `!(a < b)` is how NaN gets rejected; long literals are tabulated digits.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod bounds;
pub mod compensated;
pub mod constants;
pub mod dd;
pub mod error;
pub mod exec;
pub mod logint;
pub mod primes;
pub mod quad;
pub mod stepintegrals;
pub mod zeta_zeros;

pub use dd::Dd;
pub use error::{Error, Result};
pub use exec::Execution;
