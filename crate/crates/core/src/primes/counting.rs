//! Prime-counting functions at a single point.

use crate::error::Result;

use super::checkpoint::{floors, prefix_sums, PrefixSums};
use super::sieve::{iroot, small_primes, SieveConfig};

fn single(x: f64, cfg: &SieveConfig) -> Result<PrefixSums> {
    Ok(prefix_sums(&[x], cfg)?.pop().expect("one point in, one out"))
}

pub fn pi(x: f64) -> Result<u64> {
    pi_with(x, &SieveConfig::new(2, 3))
}

pub fn pi_with(x: f64, cfg: &SieveConfig) -> Result<u64> {
    Ok(single(x, cfg)?.pi())
}

pub fn theta(x: f64) -> Result<f64> {
    Ok(single(x, &SieveConfig::new(2, 3))?.theta())
}

pub fn psi(x: f64) -> Result<f64> {
    Ok(single(x, &SieveConfig::new(2, 3))?.psi())
}

/// `sum_{m>=1} pi(x^(1/m)) / m`, evaluated with exact integer roots.
pub fn pi_riemann(x: f64) -> Result<f64> {
    pi_riemann_with(x, &SieveConfig::new(2, 3))
}

pub fn pi_riemann_with(x: f64, cfg: &SieveConfig) -> Result<f64> {
    let n = floors(&[x])?[0];
    let top = single(x, cfg)?.pi();
    Ok(pi_riemann_from_roots(n, top))
}

/// Combines `pi(n)` with the prime counts of the integer roots of `n`.
pub(crate) fn pi_riemann_from_roots(n: u64, pi_n: u64) -> f64 {
    let small = small_primes(iroot(n, 2));
    let mut total = pi_n as f64;
    let mut m = 2;
    loop {
        let r = iroot(n, m);
        if r < 2 {
            break;
        }
        let count = small.partition_point(|&p| p <= r);
        total += count as f64 / m as f64;
        m += 1;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_counts() {
        assert_eq!(pi(2.0).unwrap(), 1);
        assert_eq!(pi(100.0).unwrap(), 25);
        assert_eq!(pi(1e6).unwrap(), 78_498);
        assert_eq!(pi(1e7 + 0.9).unwrap(), 664_579);
    }

    #[test]
    fn riemann_count_two_routes() {
        for &x in &[2.0, 4.0, 8.5, 100.0, 12345.6, 1e6] {
            let direct = pi_riemann(x).unwrap();
            let ps = prefix_sums(&[x], &SieveConfig::new(2, 3)).unwrap().pop().unwrap();
            assert!((direct - ps.pi_riemann()).abs() < 1e-10, "x = {x}");
        }
        // Pi(16) = 6 + 2/2 + 1/3 + 1/4 (primes 2..13; 2,3 below 4; 2 below 16^(1/3); 2 below 2)
        assert!((pi_riemann(16.0).unwrap() - (6.0 + 1.0 + 1.0 / 3.0 + 0.25)).abs() < 1e-12);
    }

    #[test]
    fn chebyshev_at_small_points() {
        let t = theta(10.0).unwrap();
        assert!((t - (2.0f64 * 3.0 * 5.0 * 7.0).ln()).abs() < 1e-13);
        let s = psi(10.0).unwrap();
        assert!((s - 2520.0f64.ln()).abs() < 1e-13);
    }
}
