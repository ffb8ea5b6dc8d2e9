//! Certified values of the constants that appear in the remainder terms.

mod zeta;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use crate::dd::{Dd, DD_EPS};
use crate::error::{Error, Result};
use crate::logint::{li_approx, Approx};
use crate::primes::{small_primes, SieveConfig};

pub use zeta::{
    prime_zeta, prime_zeta_approx, prime_zeta_prime, prime_zeta_prime_approx, zeta_minus_one, zeta_prime_approx,
    zeta_prime_real, zeta_real,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    ZetaAccelerated,
    DirectSum,
    ClosedForm,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ZetaAccelerated => "zeta-accelerated",
            Method::DirectSum => "direct-sum",
            Method::ClosedForm => "closed-form",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstantEstimate {
    pub name: String,
    pub value: Dd,
    pub abs_error: f64,
    pub method: Method,
}

impl ConstantEstimate {
    fn new(name: &str, a: Approx, method: Method) -> ConstantEstimate {
        ConstantEstimate { name: name.to_string(), value: a.value, abs_error: a.err, method }
    }

    pub fn f64(&self) -> f64 {
        self.value.to_f64()
    }

    pub fn approx(&self) -> Approx {
        Approx { value: self.value, err: self.abs_error }
    }

    /// True when the two estimates agree within their combined error bounds.
    pub fn agrees_with(&self, other: &ConstantEstimate) -> bool {
        (self.value - other.value).abs().to_f64() <= self.abs_error + other.abs_error + 4.0 * DD_EPS
    }
}

/// Euler's constant from Euler-Maclaurin applied to the harmonic numbers.
pub fn euler_gamma() -> ConstantEstimate {
    const N: u32 = 40;
    let mut h = Dd::ZERO;
    for k in (1..=N).rev() {
        h += Dd::ONE.div_f64(k as f64);
    }
    let n = Dd::from_f64(N as f64);
    let mut g = h - n.ln() - Dd::ONE.div_f64(2.0 * N as f64);
    // + sum B_2k / (2k N^2k)
    let inv_n2 = Dd::ONE.div_f64((N * N) as f64);
    let mut pw = inv_n2;
    let mut next = 0.0;
    for k in 1..=12 {
        let t = zeta::bernoulli(2 * k) * pw / Dd::from_f64(2.0 * k as f64);
        if k < 12 {
            g += t;
        } else {
            next = t.hi.abs();
        }
        pw *= inv_n2;
    }
    ConstantEstimate::new("gamma", Approx { value: g, err: next + 64.0 * DD_EPS }, Method::ClosedForm)
}

/// B = gamma - sum_{n>=2} P(n)/n.
pub fn mertens_b() -> ConstantEstimate {
    let g = euler_gamma().approx();
    let mut acc = Approx::exact(Dd::ZERO);
    let mut n = 2;
    loop {
        let p = prime_zeta_approx(n as f64).expect("n >= 2");
        if p.value.hi < 1e-33 {
            // P(m) <= 2^(1-m), so the rest is below 2 P(n)
            acc.err += 4.0 * p.value.hi + p.err;
            break;
        }
        acc = acc.add(p.div_f64(n as f64));
        n += 1;
    }
    ConstantEstimate::new("B", g.sub(acc), Method::ZetaAccelerated)
}

/// sum_p log p / (p (p - 1)) = -sum_{n>=2} P'(n).
pub fn sum_logp_over_pp1() -> ConstantEstimate {
    let mut acc = Approx::exact(Dd::ZERO);
    let mut n = 2;
    loop {
        let dp = prime_zeta_prime_approx(n as f64).expect("n >= 2");
        if dp.value.hi.abs() < 1e-33 {
            acc.err += 4.0 * dp.value.hi.abs() + dp.err;
            break;
        }
        acc = acc.sub(dp);
        n += 1;
    }
    ConstantEstimate::new("S", acc, Method::ZetaAccelerated)
}

/// E = -gamma - sum_p log p / (p (p - 1)).
pub fn constant_e() -> ConstantEstimate {
    let v = euler_gamma().approx().neg().sub(sum_logp_over_pp1().approx());
    ConstantEstimate::new("E", v, Method::ZetaAccelerated)
}

/// zeta'(-1) from the Glaisher-Kinkelin constant: log A by Euler-Maclaurin on
/// sum k log k, and zeta'(-1) = 1/12 - log A.
pub fn zeta_prime_minus_one_glaisher() -> ConstantEstimate {
    const N: u32 = 40;
    let mut s = Dd::ZERO;
    for k in 2..=N {
        let kd = Dd::from_f64(k as f64);
        s += kd * kd.ln();
    }
    let n = Dd::from_f64(N as f64);
    let n2 = n.sqr();
    let coef = n2.scale(0.5) + n.scale(0.5) + Dd::ONE.div_f64(12.0);
    let mut log_a = s - coef * n.ln() + n2.scale(0.25);
    let inv_n2 = Dd::ONE / n2;
    let mut pw = Dd::ONE; // N^-(2j-2)
    let mut next = 0.0;
    for j in 2..=13 {
        pw *= inv_n2;
        let jj = 2.0 * j as f64;
        let t = zeta::bernoulli(2 * j) * pw / Dd::from_f64(jj * (jj - 1.0) * (jj - 2.0));
        if j < 13 {
            log_a += t;
        } else {
            next = t.hi.abs();
        }
    }
    let v = Dd::ONE.div_f64(12.0) - log_a;
    // rounding scales with the cancelling magnitudes, about 3000 here
    let round = 16.0 * DD_EPS * (s.hi + (coef * n.ln()).hi + n2.hi);
    ConstantEstimate::new("zeta'(-1)", Approx { value: v, err: 2.0 * next + round }, Method::ClosedForm)
}

/// zeta'(-1) from the differentiated functional equation:
/// (1 - gamma - log 2 pi) / 12 + zeta'(2) / (2 pi^2).
pub fn zeta_prime_minus_one_functional() -> ConstantEstimate {
    let g = euler_gamma().approx();
    let l2pi = Approx { value: Dd::TAU.ln(), err: 8.0 * DD_EPS };
    let dz2 = zeta_prime_approx(2.0).expect("s = 2");
    let two_pi2 = Approx { value: Dd::PI.sqr().scale(2.0), err: 8.0 * DD_EPS };
    let v = Approx::exact(Dd::ONE).sub(g).sub(l2pi).div_f64(12.0).add(dz2.div(two_pi2));
    ConstantEstimate::new("zeta'(-1)", v, Method::ClosedForm)
}

fn ln_ln2() -> Approx {
    Approx { value: Dd::LN2.ln(), err: 8.0 * DD_EPS }
}

fn ln2() -> Approx {
    Approx { value: Dd::LN2, err: DD_EPS }
}

/// Named constants, computed once.
#[derive(Clone, Debug)]
pub struct ConstantSet {
    map: BTreeMap<String, ConstantEstimate>,
}

pub const NAMES: [&str; 13] =
    ["gamma", "B", "S", "E", "C", "D", "K", "lambda0", "c0", "zeta'(-1)", "c1", "psi_limit", "mu0"];

impl ConstantSet {
    pub fn empty() -> ConstantSet {
        ConstantSet { map: BTreeMap::new() }
    }

    pub fn insert(&mut self, c: ConstantEstimate) {
        self.map.insert(c.name.clone(), c);
    }

    pub fn get(&self, name: &str) -> Result<&ConstantEstimate> {
        self.map.get(name).ok_or_else(|| Error::MissingConstant(name.to_string()))
    }

    pub fn value(&self, name: &str) -> Result<f64> {
        Ok(self.get(name)?.f64())
    }

    pub fn approx(&self, name: &str) -> Result<Approx> {
        Ok(self.get(name)?.approx())
    }

    /// Constants in the canonical order of [`NAMES`], then any extras.
    pub fn iter(&self) -> impl Iterator<Item = &ConstantEstimate> {
        let known = NAMES.iter().filter_map(|n| self.map.get(*n));
        let extra = self.map.values().filter(|c| !NAMES.contains(&c.name.as_str()));
        known.chain(extra)
    }

    /// Shared instance of [`derived_constants`].
    pub fn standard() -> &'static ConstantSet {
        static CELL: OnceLock<ConstantSet> = OnceLock::new();
        CELL.get_or_init(|| derived_constants().expect("prerequisites are computed internally"))
    }
}

/// Adds the derived constants to a set that already holds gamma, B and E.
pub fn derive_from(base: &ConstantSet) -> Result<ConstantSet> {
    let mut cs = base.clone();
    let g = cs.approx("gamma")?;
    let b = cs.approx("B")?;
    let e = cs.approx("E")?;
    let li2 = li_approx(2.0)?;
    let half_li2 = li2.scale(0.5);

    // C = B - li(e)/e - integral_2^e li(t)/t^2 dt, and the integral equals
    // 1 - li(e)/e - log log 2 + li(2)/2
    let c = b.add(ln_ln2()).sub(half_li2);
    cs.insert(ConstantEstimate::new("C", c, Method::ClosedForm));
    let d = ln2().sub(Approx::exact(Dd::ONE)).add(e);
    cs.insert(ConstantEstimate::new("D", d, Method::ClosedForm));
    let one_plus_ln2 = ln2().add(Approx::exact(Dd::ONE));
    let k = b.add(e).add(ln2()).add(ln_ln2()).sub(one_plus_ln2.mul(half_li2));
    cs.insert(ConstantEstimate::new("K", k, Method::ClosedForm));
    let ln4pi = Approx { value: Dd::PI.scale(4.0).ln(), err: 8.0 * DD_EPS };
    let lambda0 = Approx::exact(Dd::from_f64(2.0)).add(g).sub(ln4pi);
    cs.insert(ConstantEstimate::new("lambda0", lambda0, Method::ClosedForm));
    let c0 = Approx { value: Dd::TAU.ln(), err: 8.0 * DD_EPS };
    cs.insert(ConstantEstimate::new("c0", c0, Method::ClosedForm));
    if cs.get("zeta'(-1)").is_err() {
        cs.insert(zeta_prime_minus_one_glaisher());
    }
    // c1 = 2 + zeta'(-1)/zeta(-1) with zeta(-1) = -1/12
    let c1 = Approx::exact(Dd::from_f64(2.0)).sub(cs.approx("zeta'(-1)")?.scale(12.0));
    cs.insert(ConstantEstimate::new("c1", c1, Method::ClosedForm));
    let psi_limit = g.neg().sub(Approx::exact(Dd::ONE)).add(ln2());
    cs.insert(ConstantEstimate::new("psi_limit", psi_limit, Method::ClosedForm));
    cs.insert(mu0(c1)?);
    Ok(cs)
}

/// integral_2^121 (theta(t) - t) dt + c1 + (2/3) 121^(3/2).
fn mu0(c1: Approx) -> Result<ConstantEstimate> {
    let x = 121.0;
    let mut theta = Dd::ZERO;
    let mut p_log = Dd::ZERO;
    for p in small_primes(121) {
        let l = Dd::from_f64(p as f64).ln();
        theta += l;
        p_log += l.mul_f64(p as f64);
    }
    let integral = theta.mul_f64(x) - p_log - Dd::from_f64((x * x - 4.0) / 2.0);
    let v = Approx { value: integral, err: 1e-27 }.add(c1).add(Approx::exact(Dd::from_f64(2.0 * 1331.0 / 3.0)));
    Ok(ConstantEstimate::new("mu0", Approx { err: v.err + 1e-28, ..v }, Method::ClosedForm))
}

pub fn derived_constants() -> Result<ConstantSet> {
    let mut base = ConstantSet::empty();
    base.insert(euler_gamma());
    base.insert(mertens_b());
    base.insert(sum_logp_over_pp1());
    base.insert(constant_e());
    derive_from(&base)
}

/// B by summing log(1 - 1/p) + 1/p over p <= limit. The tail is bounded with
/// pi(t) < 1.26 t / log t.
pub fn mertens_b_direct(limit: u64, cfg: &SieveConfig) -> Result<ConstantEstimate> {
    let terms = crate::primes::map_segments(&cfg.clone().with_range(2, limit + 1), |_, ps| {
        let mut s = crate::compensated::CompensatedSum::ZERO;
        for &p in ps {
            let x = 1.0 / p as f64;
            // -(x^2/2 + x^3/3 + ...)
            let mut pw = x * x;
            let mut t = 0.0;
            let mut k = 2.0;
            while pw > 1e-22 * x * x {
                t += pw / k;
                pw *= x;
                k += 1.0;
            }
            s.add(-t);
        }
        s
    })?;
    let total = terms.iter().fold(crate::compensated::CompensatedSum::ZERO, |a, b| a.merge(b));
    let n = limit as f64;
    let tail = 1.26 / (n * n.ln()) / (1.0 - 1.0 / n);
    let g = euler_gamma();
    let v = g.approx().add(Approx { value: total.dd(), err: 1e-15 * total.value().abs() + tail });
    Ok(ConstantEstimate::new("B", v, Method::DirectSum))
}

/// sum_{p <= limit} log p / (p (p - 1)); the tail is bounded with
/// theta(t) < 1.01624 t.
pub fn sum_logp_over_pp1_direct(limit: u64, cfg: &SieveConfig) -> Result<ConstantEstimate> {
    let terms = crate::primes::map_segments(&cfg.clone().with_range(2, limit + 1), |_, ps| {
        let mut s = crate::compensated::CompensatedSum::ZERO;
        for &p in ps {
            let pf = p as f64;
            s.add(pf.ln() / (pf * (pf - 1.0)));
        }
        s
    })?;
    let total = terms.iter().fold(crate::compensated::CompensatedSum::ZERO, |a, b| a.merge(b));
    let n = limit as f64;
    let tail = 2.0 * 1.01624 / n / (1.0 - 1.0 / n);
    // the true value exceeds the partial sum by at most `tail`
    let mid = total.dd() + Dd::from_f64(tail / 2.0);
    Ok(ConstantEstimate::new("S", Approx { value: mid, err: tail / 2.0 + 1e-15 * total.value() }, Method::DirectSum))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(s: &str) -> Dd {
        Dd::parse(s).unwrap()
    }

    #[test]
    fn gamma_matches_literal() {
        let g = euler_gamma();
        let want = lit("0.57721566490153286060651209008240243104");
        assert!((g.value - want).abs().to_f64() < 1e-29);
        assert!((g.value - crate::logint::EULER_GAMMA).abs().to_f64() < 1e-30);
    }

    #[test]
    fn published_digits() {
        let cs = ConstantSet::standard();
        let close = |name: &str, v: f64, tol: f64| {
            let got = cs.value(name).unwrap();
            assert!((got - v).abs() < tol, "{name}: {got} vs {v}");
        };
        close("B", 0.26149, 1e-5);
        close("E", -1.3325, 1e-4);
        close("S", 0.755366, 1e-6);
        close("C", -0.62759, 1e-5);
        close("D", -1.63943509, 1e-8);
        close("K", -1.62925885667, 1e-11);
        close("psi_limit", -0.884068, 1e-6);
        close("mu0", -210.2527, 1e-4);
        let l0 = cs.value("lambda0").unwrap();
        assert!(l0 > 0.0461914 && l0 < 0.0461915);
        for c in cs.iter() {
            assert!(c.abs_error >= 0.0 && c.abs_error < 1e-20, "{}: {:e}", c.name, c.abs_error);
        }
    }

    #[test]
    fn zeta_prime_at_minus_one_two_ways() {
        let a = zeta_prime_minus_one_glaisher();
        let b = zeta_prime_minus_one_functional();
        assert!((a.value - b.value).abs().to_f64() < 1e-15);
        assert!(a.agrees_with(&b), "{} {:e} vs {} {:e}", a.value, a.abs_error, b.value, b.abs_error);
        let c1 = ConstantSet::standard().value("c1").unwrap();
        assert!((c1 - 3.985053724405411).abs() < 1e-14);
    }

    #[test]
    fn algebraic_relations() {
        let cs = ConstantSet::standard();
        let v = |n: &str| cs.get(n).unwrap().value;
        let d_minus_e = v("D") - v("E");
        assert!((d_minus_e - (Dd::LN2 - Dd::ONE)).abs().to_f64() < 1e-30);
        // -gamma - 1 + log 2 = D + S
        assert!((v("psi_limit") - (v("D") + v("S"))).abs().to_f64() < 1e-10);
        // K = C + E + log 2 - log 2 li(2)/2
        let li2 = li_approx(2.0).unwrap().value;
        let k = v("C") + v("E") + Dd::LN2 - Dd::LN2 * li2.scale(0.5);
        assert!((k - v("K")).abs().to_f64() < 1e-28);
        assert!((v("E") + v("gamma") + v("S")).abs().to_f64() < 1e-10);
    }

    #[test]
    fn missing_constant_is_an_error() {
        let mut base = ConstantSet::empty();
        base.insert(euler_gamma());
        assert!(matches!(derive_from(&base), Err(Error::MissingConstant(n)) if n == "B"));
    }

    #[test]
    fn constant_c_against_quadrature() {
        // C = B - li(e)/e - integral_2^e li(t)/t^2 dt, integral by quadrature
        let cs = ConstantSet::standard();
        let e = std::f64::consts::E;
        let lie = crate::logint::li(e).unwrap().value;
        let q = crate::quad::adaptive(|t| crate::logint::li(t).unwrap().value / (t * t), 2.0, e, 0.0, 1e-15);
        let c = cs.value("B").unwrap() - lie / e - q.value;
        assert!((c - cs.value("C").unwrap()).abs() < 1e-14);
    }

    #[test]
    fn direct_sums_agree_with_acceleration() {
        let cfg = SieveConfig::new(2, 3);
        let b = mertens_b_direct(10_000_000, &cfg).unwrap();
        assert!(b.agrees_with(&mertens_b()), "{} vs {}", b.value, mertens_b().value);
        let s = sum_logp_over_pp1_direct(10_000_000, &cfg).unwrap();
        assert!(s.agrees_with(&sum_logp_over_pp1()));
    }

    #[test]
    fn prime_zeta_against_direct_sums() {
        let mut p2 = 0.0;
        let mut dp2 = 0.0;
        let mut p3 = 0.0;
        for p in small_primes(2_000_000) {
            let x = p as f64;
            p2 += 1.0 / (x * x);
            dp2 += x.ln() / (x * x);
            p3 += 1.0 / (x * x * x);
        }
        // tails beyond 2e6: sum 1/p^2 < 1.26 * 2 / (N log N), sum log p / p^2 < 2.04 / N
        let n = 2e6f64;
        assert!((prime_zeta(2.0).unwrap() - p2).abs() < 2.52 / (n * n.ln()));
        assert!((-prime_zeta_prime(2.0).unwrap() - dp2).abs() < 2.04 / n);
        assert!((prime_zeta(3.0).unwrap() - p3).abs() < 1e-12);
    }
}
