//! Segmented, odd-only sieve of Eratosthenes.

use crate::error::{Error, Result};
use crate::exec::Execution;

/// Default ceiling on sieve ranges.
pub const DEFAULT_MAX: u64 = 1_000_000_000;
/// Largest ceiling the sieve accepts at all.
pub const STRETCH_MAX: u64 = 10_000_000_000;
pub const MIN_SEGMENT_BYTES: usize = 1 << 14;
pub const DEFAULT_SEGMENT_BYTES: usize = 1 << 20;

/// Sieve over the half-open range `[lo, hi)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SieveConfig {
    pub lo: u64,
    pub hi: u64,
    /// Bitmap bytes per segment; each byte covers 16 integers.
    pub segment_bytes: usize,
    pub max: u64,
    pub execution: Execution,
}

impl SieveConfig {
    pub fn new(lo: u64, hi: u64) -> SieveConfig {
        SieveConfig { lo, hi, segment_bytes: DEFAULT_SEGMENT_BYTES, max: DEFAULT_MAX, execution: Execution::default() }
    }

    pub fn with_segment_bytes(mut self, bytes: usize) -> Self {
        self.segment_bytes = bytes;
        self
    }

    pub fn with_max(mut self, max: u64) -> Self {
        self.max = max;
        self
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    pub fn with_range(mut self, lo: u64, hi: u64) -> Self {
        self.lo = lo;
        self.hi = hi;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.lo >= self.hi {
            return Err(Error::InvalidRange { lo: self.lo, hi: self.hi });
        }
        if self.segment_bytes < MIN_SEGMENT_BYTES {
            return Err(Error::SegmentTooSmall(self.segment_bytes));
        }
        let max = self.max.min(STRETCH_MAX);
        // the range is half-open, so hi = max + 1 still only touches integers <= max
        if self.hi - 1 > max {
            return Err(Error::RangeExceeded { hi: self.hi - 1, max });
        }
        Ok(())
    }

    pub(crate) fn segment_span(&self) -> u64 {
        self.segment_bytes as u64 * 16
    }

    /// Consecutive segment ranges covering `[lo, hi)`.
    pub fn segments(&self) -> Vec<(u64, u64)> {
        let span = self.segment_span();
        let mut out = Vec::new();
        let mut a = self.lo;
        while a < self.hi {
            let b = a.saturating_add(span).min(self.hi);
            out.push((a, b));
            a = b;
        }
        out
    }
}

pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|s| s > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|s| s <= n) {
        r += 1;
    }
    r
}

/// Largest `r` with `r^m <= n`.
pub fn iroot(n: u64, m: u32) -> u64 {
    match m {
        0 => panic!("zeroth root"),
        1 => return n,
        2 => return isqrt(n),
        _ => {}
    }
    let mut r = (n as f64).powf(1.0 / m as f64).round() as u64;
    while r > 0 && r.checked_pow(m).is_none_or(|s| s > n) {
        r -= 1;
    }
    while (r + 1).checked_pow(m).is_some_and(|s| s <= n) {
        r += 1;
    }
    r
}

/// All primes `<= limit` by a plain sieve; used for base primes and small tables.
pub fn small_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::with_capacity(if n > 10 { (1.3 * n as f64 / (n as f64).ln()) as usize } else { 4 });
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Sieves `[a, b)` and calls `emit` for each prime in increasing order.
/// `base` must hold the odd primes up to at least `sqrt(b - 1)`, in order.
pub(crate) fn sieve_segment(a: u64, b: u64, base: &[u64], words: &mut Vec<u64>, mut emit: impl FnMut(u64)) {
    if a <= 2 && 2 < b {
        emit(2);
    }
    let first = if a.is_multiple_of(2) { a + 1 } else { a }.max(3);
    if first >= b {
        return;
    }
    let nbits = (b - first).div_ceil(2) as usize;
    let nwords = nbits.div_ceil(64);
    words.clear();
    words.resize(nwords, !0u64);
    if !nbits.is_multiple_of(64) {
        words[nwords - 1] = (1u64 << (nbits % 64)) - 1;
    }
    for &p in base {
        let pp = p * p;
        if pp >= b {
            break;
        }
        let mut start = pp.max(first.div_ceil(p) * p);
        if start % 2 == 0 {
            start += p;
        }
        let mut idx = ((start - first) / 2) as usize;
        let step = p as usize;
        while idx < nbits {
            words[idx >> 6] &= !(1u64 << (idx & 63));
            idx += step;
        }
    }
    for (w, &word) in words.iter().enumerate() {
        let mut bits = word;
        while bits != 0 {
            let t = bits.trailing_zeros() as u64;
            emit(first + 2 * (w as u64 * 64 + t));
            bits &= bits - 1;
        }
    }
}

/// Odd base primes up to `sqrt(hi - 1)`.
pub(crate) fn base_primes(hi: u64) -> Vec<u64> {
    let mut v = small_primes(isqrt(hi.saturating_sub(1)));
    if !v.is_empty() {
        v.remove(0);
    }
    v
}

/// Calls `visit` on every prime in `[cfg.lo, cfg.hi)` in increasing order.
pub fn enumerate_primes(cfg: &SieveConfig, mut visit: impl FnMut(u64)) -> Result<()> {
    cfg.validate()?;
    let base = base_primes(cfg.hi);
    let mut words = Vec::new();
    for (a, b) in cfg.segments() {
        sieve_segment(a, b, &base, &mut words, &mut visit);
    }
    Ok(())
}

/// Runs `f` on every segment with the primes it contains, in parallel when the
/// configuration asks for it. Results come back in segment order.
pub fn map_segments<R, F>(cfg: &SieveConfig, f: F) -> Result<Vec<R>>
where
    R: Send,
    F: Fn((u64, u64), &[u64]) -> R + Sync + Send,
{
    cfg.validate()?;
    let base = base_primes(cfg.hi);
    let segs = cfg.segments();
    Ok(cfg.execution.map(&segs, |&(a, b)| {
        let mut words = Vec::new();
        let mut primes = Vec::with_capacity(((b - a) as f64 / ((b as f64).ln().max(1.0) - 1.1).max(1.0)) as usize + 16);
        sieve_segment(a, b, &base, &mut words, |p| primes.push(p));
        f((a, b), &primes)
    }))
}
