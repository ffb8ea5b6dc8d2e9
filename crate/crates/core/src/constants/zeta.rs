//! Riemann zeta and its derivative on the real axis (s >= 2) by Euler-Maclaurin
//! summation, plus the prime zeta function via Moebius inversion.

use std::sync::OnceLock;

use crate::dd::{Dd, DD_EPS};
use crate::error::{domain, Result};
use crate::logint::Approx;

/// B_2, B_4, ..., B_34 as exact numerator/denominator pairs.
pub(crate) const BERNOULLI: [(f64, f64); 17] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
    (854513.0, 138.0),
    (-236364091.0, 2730.0),
    (8553103.0, 6.0),
    (-23749461029.0, 870.0),
    (8615841276005.0, 14322.0),
    (-7709321041217.0, 510.0),
    (2577687858367.0, 6.0),
];

pub(crate) fn bernoulli(two_k: usize) -> Dd {
    let (n, d) = BERNOULLI[two_k / 2 - 1];
    Dd::from_f64(n).div_f64(d)
}

/// B_{2k} / (2k)! for k = 1..=17.
fn bernoulli_over_factorial() -> &'static [Dd; 17] {
    static CELL: OnceLock<[Dd; 17]> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut out = [Dd::ZERO; 17];
        let mut fact = Dd::ONE;
        for k in 1..=17 {
            fact = fact.mul_f64((2 * k - 1) as f64).mul_f64((2 * k) as f64);
            out[k - 1] = bernoulli(2 * k) / fact;
        }
        out
    })
}

const N: u32 = 20;
const TERMS: usize = 15;

fn logs() -> &'static [Dd; N as usize + 1] {
    static CELL: OnceLock<[Dd; N as usize + 1]> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut out = [Dd::ZERO; N as usize + 1];
        for (n, slot) in out.iter_mut().enumerate().skip(2) {
            *slot = Dd::from_f64(n as f64).ln();
        }
        out
    })
}

fn pow_neg(n: u32, s: f64) -> Dd {
    if s.fract() == 0.0 && s <= 2000.0 {
        Dd::from_f64(n as f64).powi(-(s as i32))
    } else {
        (-(logs()[n as usize] * s)).exp()
    }
}

/// zeta(s) - 1, zeta'(s), each with an error bound.
fn zeta_em(s: f64) -> (Approx, Approx) {
    let lnn = logs()[N as usize];
    let mut z = Dd::ZERO;
    let mut dz = Dd::ZERO;
    for n in 2..N {
        let p = pow_neg(n, s);
        z += p;
        dz -= p * logs()[n as usize];
    }
    let n_s = pow_neg(N, s); // N^-s
    let sm1 = s - 1.0;
    // N^(1-s)/(s-1) + N^-s/2
    let head = n_s.mul_f64(N as f64).div_f64(sm1);
    z += head + n_s.scale(0.5);
    dz -= head * (lnn + Dd::ONE.div_f64(sm1)) + n_s.scale(0.5) * lnn;
    // Bernoulli corrections: B_2k/(2k)! s(s+1)...(s+2k-2) N^(-s-2k+1)
    let bf = bernoulli_over_factorial();
    let inv_n2 = Dd::ONE.div_f64((N * N) as f64);
    let mut poch = Dd::from_f64(s);
    let mut dpoch = Dd::ONE.div_f64(s); // sum of 1/(s+j)
    let mut pw = n_s.div_f64(N as f64); // N^(-s-1)
    let mut last_t = 0.0;
    let mut last_dt = 0.0;
    for k in 1..=TERMS + 1 {
        let t = bf[k - 1] * poch * pw;
        let dt = t * (dpoch - lnn);
        if k <= TERMS {
            z += t;
            dz += dt;
        } else {
            last_t = t.hi.abs();
            last_dt = dt.hi.abs();
        }
        let a = s + (2 * k - 1) as f64;
        let b = s + (2 * k) as f64;
        poch = poch.mul_f64(a).mul_f64(b);
        dpoch = dpoch + Dd::ONE.div_f64(a) + Dd::ONE.div_f64(b);
        pw *= inv_n2;
    }
    let round = 64.0 * DD_EPS;
    (
        Approx { value: z, err: 2.0 * last_t + round * z.hi.abs() },
        Approx { value: dz, err: 2.0 * last_dt + round * dz.hi.abs() },
    )
}

const TABLE_MAX: usize = 160;

fn integer_table() -> &'static Vec<(Approx, Approx)> {
    static CELL: OnceLock<Vec<(Approx, Approx)>> = OnceLock::new();
    CELL.get_or_init(|| (0..=TABLE_MAX).map(|m| if m < 2 { zeta_em(2.0) } else { zeta_em(m as f64) }).collect())
}

fn zeta_parts(s: f64) -> (Approx, Approx) {
    if s.fract() == 0.0 && s <= TABLE_MAX as f64 {
        integer_table()[s as usize]
    } else {
        zeta_em(s)
    }
}

fn check(s: f64) -> Result<()> {
    if !(s >= 2.0) || !s.is_finite() {
        return Err(domain("zeta on the real axis needs s >= 2", s));
    }
    Ok(())
}

/// zeta(s) - 1 in double-double.
pub fn zeta_minus_one(s: f64) -> Result<Approx> {
    check(s)?;
    Ok(zeta_parts(s).0)
}

pub fn zeta_prime_approx(s: f64) -> Result<Approx> {
    check(s)?;
    Ok(zeta_parts(s).1)
}

pub fn zeta_real(s: f64) -> Result<f64> {
    Ok(zeta_minus_one(s)?.add(Approx::exact(Dd::ONE)).f64())
}

pub fn zeta_prime_real(s: f64) -> Result<f64> {
    Ok(zeta_prime_approx(s)?.f64())
}

fn mobius(n: u32) -> i32 {
    let mut n = n;
    let mut mu = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            mu = -mu;
        }
        d += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// log zeta(s) from zeta(s) - 1.
fn log_zeta(s: f64) -> Approx {
    let zm1 = zeta_parts(s).0;
    let v = zm1.value.ln_1p();
    Approx { value: v, err: zm1.err + 16.0 * DD_EPS * v.hi.abs() }
}

/// Terms run while |log zeta(ks)| >= 1e-30 (or its derivative analogue); the
/// neglected remainder is at most twice the first omitted term.
fn moebius_sum(s: f64, term: impl Fn(f64) -> Approx, size: impl Fn(f64) -> f64) -> Approx {
    let mut acc = Approx::exact(Dd::ZERO);
    let mut k = 1u32;
    loop {
        let ks = k as f64 * s;
        if size(ks) < 1e-30 {
            acc.err += 2.0 * size(ks);
            return acc;
        }
        let mu = mobius(k);
        if mu != 0 {
            let t = term(ks).scale(mu as f64).div_f64(k as f64);
            acc = acc.add(t);
        }
        k += 1;
    }
}

pub fn prime_zeta_approx(s: f64) -> Result<Approx> {
    check(s)?;
    // |log zeta(t)| <= zeta(t) - 1 <= 2^(1-t) for t >= 2
    Ok(moebius_sum(s, log_zeta, |t| 2f64.powf(1.0 - t)))
}

/// P'(s) = sum mu(k) zeta'(ks)/zeta(ks).
pub fn prime_zeta_prime_approx(s: f64) -> Result<Approx> {
    check(s)?;
    let term = |t: f64| {
        let (zm1, dz) = zeta_parts(t);
        let z = zm1.add(Approx::exact(Dd::ONE));
        // the 1/k factor of moebius_sum is undone here
        dz.div(z).scale(t / s)
    };
    Ok(moebius_sum(s, term, |t| 2.0 * t * 2f64.powf(-t)))
}

pub fn prime_zeta(s: f64) -> Result<f64> {
    Ok(prime_zeta_approx(s)?.f64())
}

pub fn prime_zeta_prime(s: f64) -> Result<f64> {
    Ok(prime_zeta_prime_approx(s)?.f64())
}
