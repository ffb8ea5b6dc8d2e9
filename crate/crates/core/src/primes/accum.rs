//! Mergeable accumulators of prime and prime-power sums over half-open ranges.

use crate::compensated::CompensatedSum;
use crate::error::{Error, Result};

use super::sieve::{iroot, small_primes};

/// Half-open integer range `[lo, hi)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub lo: u64,
    pub hi: u64,
}

impl Span {
    pub fn new(lo: u64, hi: u64) -> Span {
        Span { lo, hi }
    }
}

fn join(left: Span, right: Span) -> Result<Span> {
    if left.hi != right.lo {
        return Err(Error::NotAdjacent { left: (left.lo, left.hi), right: (right.lo, right.hi) });
    }
    Ok(Span::new(left.lo, right.hi))
}

/// Sums over the primes `p` in a span. Real-valued sums are compensated.
#[derive(Clone, Debug, PartialEq)]
pub struct PrimeAccumulator {
    pub span: Span,
    pub count: u64,
    pub sum_p: u128,
    /// sum of log p
    pub sum_log: CompensatedSum,
    /// sum of 1/p
    pub sum_inv: CompensatedSum,
    /// sum of log p / p
    pub sum_log_over_p: CompensatedSum,
    /// sum of (log p + 1) / p
    pub sum_inv_logp1: CompensatedSum,
    /// sum of p log p
    pub sum_p_log: CompensatedSum,
}

impl PrimeAccumulator {
    pub fn empty(span: Span) -> PrimeAccumulator {
        PrimeAccumulator {
            span,
            count: 0,
            sum_p: 0,
            sum_log: CompensatedSum::ZERO,
            sum_inv: CompensatedSum::ZERO,
            sum_log_over_p: CompensatedSum::ZERO,
            sum_inv_logp1: CompensatedSum::ZERO,
            sum_p_log: CompensatedSum::ZERO,
        }
    }

    #[inline]
    pub fn push(&mut self, p: u64) {
        debug_assert!(p >= self.span.lo && p < self.span.hi);
        let pf = p as f64;
        let lp = pf.ln();
        let inv = 1.0 / pf;
        self.count += 1;
        self.sum_p += p as u128;
        self.sum_log.add(lp);
        self.sum_inv.add(inv);
        self.sum_log_over_p.add(lp / pf);
        self.sum_inv_logp1.add((lp + 1.0) / pf);
        self.sum_p_log.add(pf * lp);
    }

    pub fn from_primes(span: Span, primes: &[u64]) -> PrimeAccumulator {
        let mut acc = PrimeAccumulator::empty(span);
        for &p in primes {
            acc.push(p);
        }
        acc
    }

    /// Combines accumulators over `[a, b)` and `[b, c)` into one over `[a, c)`.
    pub fn merge(&self, right: &PrimeAccumulator) -> Result<PrimeAccumulator> {
        Ok(PrimeAccumulator {
            span: join(self.span, right.span)?,
            count: self.count + right.count,
            sum_p: self.sum_p + right.sum_p,
            sum_log: self.sum_log.merge(&right.sum_log),
            sum_inv: self.sum_inv.merge(&right.sum_inv),
            sum_log_over_p: self.sum_log_over_p.merge(&right.sum_log_over_p),
            sum_inv_logp1: self.sum_inv_logp1.merge(&right.sum_inv_logp1),
            sum_p_log: self.sum_p_log.merge(&right.sum_p_log),
        })
    }
}

/// A prime power `p^m` with `m >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimePower {
    pub value: u64,
    pub prime: u64,
    pub exp: u32,
}

/// Prime powers `p^m <= limit` with `m >= 2`, ascending.
pub fn prime_powers(limit: u64) -> Vec<PrimePower> {
    let mut out = Vec::new();
    if limit < 4 {
        return out;
    }
    for p in small_primes(iroot(limit, 2)) {
        let mut q = p * p;
        let mut m = 2;
        loop {
            out.push(PrimePower { value: q, prime: p, exp: m });
            match q.checked_mul(p) {
                Some(next) if next <= limit => {
                    q = next;
                    m += 1;
                }
                _ => break,
            }
        }
    }
    out.sort_unstable_by_key(|pp| pp.value);
    out
}

/// Sums over prime powers `p^m` (`m >= 2`) in a span.
#[derive(Clone, Debug, PartialEq)]
pub struct PrimePowerAccumulator {
    pub span: Span,
    pub count: u64,
    /// sum of log p
    pub sum_log: CompensatedSum,
    /// sum of p^m log p
    pub sum_pm_log: CompensatedSum,
    /// sum of log p / p^m
    pub sum_log_over_pm: CompensatedSum,
    /// sum of 1/m
    pub sum_inv_m: CompensatedSum,
    /// sum of p^m / m
    pub sum_pm_over_m: CompensatedSum,
}

impl PrimePowerAccumulator {
    pub fn empty(span: Span) -> PrimePowerAccumulator {
        PrimePowerAccumulator {
            span,
            count: 0,
            sum_log: CompensatedSum::ZERO,
            sum_pm_log: CompensatedSum::ZERO,
            sum_log_over_pm: CompensatedSum::ZERO,
            sum_inv_m: CompensatedSum::ZERO,
            sum_pm_over_m: CompensatedSum::ZERO,
        }
    }

    pub fn push(&mut self, pp: PrimePower) {
        let lp = (pp.prime as f64).ln();
        let q = pp.value as f64;
        let m = pp.exp as f64;
        self.count += 1;
        self.sum_log.add(lp);
        self.sum_pm_log.add(q * lp);
        self.sum_log_over_pm.add(lp / q);
        self.sum_inv_m.add(1.0 / m);
        self.sum_pm_over_m.add(q / m);
    }

    /// Accumulates the prime powers of `powers` (ascending) that fall in `span`.
    pub fn from_powers(span: Span, powers: &[PrimePower]) -> PrimePowerAccumulator {
        let mut acc = PrimePowerAccumulator::empty(span);
        let start = powers.partition_point(|pp| pp.value < span.lo);
        for pp in &powers[start..] {
            if pp.value >= span.hi {
                break;
            }
            acc.push(*pp);
        }
        acc
    }

    pub fn merge(&self, right: &PrimePowerAccumulator) -> Result<PrimePowerAccumulator> {
        Ok(PrimePowerAccumulator {
            span: join(self.span, right.span)?,
            count: self.count + right.count,
            sum_log: self.sum_log.merge(&right.sum_log),
            sum_pm_log: self.sum_pm_log.merge(&right.sum_pm_log),
            sum_log_over_pm: self.sum_log_over_pm.merge(&right.sum_log_over_pm),
            sum_inv_m: self.sum_inv_m.merge(&right.sum_inv_m),
            sum_pm_over_m: self.sum_pm_over_m.merge(&right.sum_pm_over_m),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_requires_adjacency() {
        let a = PrimeAccumulator::empty(Span::new(2, 10));
        let b = PrimeAccumulator::empty(Span::new(11, 20));
        assert!(a.merge(&b).is_err());
        let c = PrimeAccumulator::empty(Span::new(10, 20));
        assert_eq!(a.merge(&c).unwrap().span, Span::new(2, 20));
    }

    #[test]
    fn prime_power_list() {
        let v: Vec<u64> = prime_powers(64).iter().map(|p| p.value).collect();
        assert_eq!(v, vec![4, 8, 9, 16, 25, 27, 32, 49, 64]);
        let last = prime_powers(64).last().copied().unwrap();
        assert_eq!((last.prime, last.exp), (2, 6));
    }
}
