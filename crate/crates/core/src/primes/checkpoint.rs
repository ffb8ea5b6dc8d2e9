//! Prefix sums at a sorted list of real evaluation points, from one sieve pass.

use crate::error::{domain, Error, Result};

use super::accum::{prime_powers, PrimeAccumulator, PrimePowerAccumulator, Span};
use super::sieve::{map_segments, SieveConfig};

/// Prime and prime-power sums over all `n <= floor(x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PrefixSums {
    pub x: f64,
    pub primes: PrimeAccumulator,
    pub powers: PrimePowerAccumulator,
}

impl PrefixSums {
    /// floor(x)
    pub fn n(&self) -> u64 {
        self.primes.span.hi - 1
    }

    pub fn pi(&self) -> u64 {
        self.primes.count
    }

    pub fn theta(&self) -> f64 {
        self.primes.sum_log.value()
    }

    pub fn psi(&self) -> f64 {
        self.primes.sum_log.merge(&self.powers.sum_log).value()
    }

    /// Riemann's prime-power counting function, from the streamed 1/m sums.
    pub fn pi_riemann(&self) -> f64 {
        self.primes.count as f64 + self.powers.sum_inv_m.value()
    }
}

/// Checks that `points` are finite, ascending and at least 2; returns their floors.
pub(crate) fn floors(points: &[f64]) -> Result<Vec<u64>> {
    let mut out = Vec::with_capacity(points.len());
    for (i, &x) in points.iter().enumerate() {
        if !(x >= 2.0) || !x.is_finite() || x >= 1.8e19 {
            return Err(domain("evaluation point", x));
        }
        if i > 0 && x < points[i - 1] {
            return Err(Error::Unsorted { index: i });
        }
        out.push(x.floor() as u64);
    }
    Ok(out)
}

/// Computes prefix sums at every point. `template` supplies segment size,
/// ceiling and execution mode; its range is ignored.
pub fn prefix_sums(points: &[f64], template: &SieveConfig) -> Result<Vec<PrefixSums>> {
    let ns = floors(points)?;
    if ns.is_empty() {
        return Ok(Vec::new());
    }
    let mut cuts: Vec<u64> = ns.iter().map(|&n| n + 1).collect();
    cuts.dedup();
    let hi = *cuts.last().unwrap();
    let cfg = template.clone().with_range(2, hi);
    cfg.validate()?;

    // per segment: accumulators for the cells between consecutive cuts
    let cells: Vec<Vec<PrimeAccumulator>> = map_segments(&cfg, |(a, b), primes| {
        let mut out = Vec::new();
        let first = cuts.partition_point(|&c| c <= a);
        let mut lo = a;
        let mut rest = primes;
        for &c in cuts[first..].iter().take_while(|&&c| c < b) {
            let k = rest.partition_point(|&p| p < c);
            out.push(PrimeAccumulator::from_primes(Span::new(lo, c), &rest[..k]));
            rest = &rest[k..];
            lo = c;
        }
        out.push(PrimeAccumulator::from_primes(Span::new(lo, b), rest));
        out
    })?;

    let powers = prime_powers(hi - 1);
    let mut prime_prefix: Vec<PrimeAccumulator> = Vec::with_capacity(cuts.len());
    let mut running = PrimeAccumulator::empty(Span::new(2, 2));
    let mut next_cut = 0;
    for cell in cells.into_iter().flatten() {
        running = running.merge(&cell)?;
        if next_cut < cuts.len() && running.span.hi == cuts[next_cut] {
            prime_prefix.push(running.clone());
            next_cut += 1;
        }
    }
    debug_assert_eq!(prime_prefix.len(), cuts.len());

    let mut power_prefix = Vec::with_capacity(cuts.len());
    let mut running = PrimePowerAccumulator::empty(Span::new(2, 2));
    for &c in &cuts {
        let cell = PrimePowerAccumulator::from_powers(Span::new(running.span.hi, c), &powers);
        running = running.merge(&cell)?;
        power_prefix.push(running.clone());
    }

    let mut out = Vec::with_capacity(points.len());
    let mut j = 0;
    for (&x, &n) in points.iter().zip(&ns) {
        while cuts[j] != n + 1 {
            j += 1;
        }
        out.push(PrefixSums { x, primes: prime_prefix[j].clone(), powers: power_prefix[j].clone() });
    }
    Ok(out)
}
