//! Prime enumeration, mergeable prime sums, prefix sums at checkpoints and
//! the counting functions built on them.

mod accum;
mod cache;
mod checkpoint;
mod counting;
mod sieve;

pub use accum::{prime_powers, PrimeAccumulator, PrimePower, PrimePowerAccumulator, Span};
pub use cache::{read_checkpoints, write_checkpoints, CACHE_VERSION};
pub use checkpoint::{prefix_sums, PrefixSums};
pub use counting::{pi, pi_riemann, pi_riemann_with, pi_with, psi, theta};
pub use sieve::{
    enumerate_primes, iroot, isqrt, map_segments, small_primes, SieveConfig, DEFAULT_MAX, DEFAULT_SEGMENT_BYTES,
    MIN_SEGMENT_BYTES, STRETCH_MAX,
};

pub(crate) use checkpoint::floors;
pub(crate) use counting::pi_riemann_from_roots;

use crate::error::Result;

/// Accumulates every prime in the configured range.
pub fn accumulate(cfg: &SieveConfig) -> Result<PrimeAccumulator> {
    let parts = map_segments(cfg, |(a, b), primes| PrimeAccumulator::from_primes(Span::new(a, b), primes))?;
    let mut it = parts.into_iter();
    let mut acc = it.next().expect("validated range is nonempty");
    for part in it {
        acc = acc.merge(&part)?;
    }
    Ok(acc)
}
