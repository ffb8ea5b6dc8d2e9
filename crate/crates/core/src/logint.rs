//! The logarithmic integral li(x) = Ei(log x) and closed-form antiderivatives
//! of the smooth integrands that accompany the prime-counting step functions.

use crate::dd::{Dd, DD_EPS};
use crate::error::{domain, Result};

/// Euler's constant as a double-double literal; the constants module
/// recomputes it independently.
pub const EULER_GAMMA: Dd = Dd::new(0.5772156649015329, -4.942915152430645e-18);

const F64_EPS: f64 = f64::EPSILON / 2.0;

/// Above this argument of Ei the asymptotic expansion is used.
const ASYMPTOTIC_FROM: f64 = 75.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LiValue {
    pub value: f64,
    pub abs_error: f64,
}

/// A double-double value with an absolute error bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Approx {
    pub value: Dd,
    pub err: f64,
}

// by-value arithmetic that also carries the error, not the operator traits
#[allow(clippy::should_implement_trait)]
impl Approx {
    pub fn exact(value: Dd) -> Approx {
        Approx { value, err: 0.0 }
    }

    pub fn f64(self) -> f64 {
        self.value.to_f64()
    }

    /// Error bound after rounding to binary64.
    pub fn f64_err(self) -> f64 {
        self.err + self.value.to_f64().abs() * F64_EPS
    }

    pub fn add(self, o: Approx) -> Approx {
        let v = self.value + o.value;
        Approx { value: v, err: self.err + o.err + 2.0 * DD_EPS * v.hi.abs() }
    }

    pub fn sub(self, o: Approx) -> Approx {
        self.add(o.neg())
    }

    pub fn neg(self) -> Approx {
        Approx { value: -self.value, err: self.err }
    }

    pub fn mul(self, o: Approx) -> Approx {
        let v = self.value * o.value;
        Approx {
            value: v,
            err: self.err * o.value.hi.abs()
                + o.err * self.value.hi.abs()
                + self.err * o.err
                + 4.0 * DD_EPS * v.hi.abs(),
        }
    }

    pub fn div(self, o: Approx) -> Approx {
        let v = self.value / o.value;
        let d = o.value.hi.abs();
        Approx { value: v, err: (self.err + v.hi.abs() * o.err) / (d - o.err).max(d * 0.5) + 4.0 * DD_EPS * v.hi.abs() }
    }

    pub fn div_f64(self, k: f64) -> Approx {
        let v = self.value.div_f64(k);
        Approx { value: v, err: self.err / k.abs() + 2.0 * DD_EPS * v.hi.abs() }
    }

    /// Multiplication by an exactly representable factor.
    pub fn scale(self, k: f64) -> Approx {
        let v = self.value * k;
        Approx { value: v, err: self.err * k.abs() + 2.0 * DD_EPS * v.hi.abs() }
    }
}

/// `log x` in double-double with its error bound.
pub fn ln_approx(x: f64) -> Approx {
    let v = Dd::from_f64(x).ln();
    Approx { value: v, err: 8.0 * DD_EPS * v.hi.abs().max(1e-300) }
}

/// li(e^u) = Ei(u) for u > 0.
pub fn li_from_log(u: Dd) -> Result<Approx> {
    let uf = u.to_f64();
    if !(uf > 0.0) || !uf.is_finite() {
        return Err(domain("li(e^u)", uf));
    }
    if uf > 700.0 {
        return Err(domain("li(e^u) overflows", uf));
    }
    if uf < ASYMPTOTIC_FROM {
        Ok(ei_series(u))
    } else {
        Ok(ei_asymptotic(u))
    }
}

/// Same as [`li_from_log`] but propagating an error already present in `u`;
/// d Ei(u)/du = e^u / u.
pub fn li_from_log_approx(u: Approx) -> Result<Approx> {
    let mut r = li_from_log(u.value)?;
    let uf = u.value.to_f64();
    r.err += u.err * (uf + u.err).exp() / (uf - u.err).max(uf * 0.5);
    Ok(r)
}

/// gamma + log u + sum u^k / (k k!), with a geometric bound on the tail.
pub(crate) fn ei_series(u: Dd) -> Approx {
    let uf = u.to_f64();
    let mut a = Dd::ONE; // u^k / k!
    let mut s = Dd::ZERO;
    let mut k = 1u32;
    let tail;
    loop {
        a = (a * u).div_f64(k as f64);
        let term = a.div_f64(k as f64);
        s += term;
        let r = uf / (k + 1) as f64;
        if r < 0.5 && term.hi <= 1e-34 * s.hi {
            // remaining terms are below term * r / (1 - r)
            tail = term.hi * r / (1.0 - r);
            break;
        }
        k += 1;
    }
    let log_u = u.ln();
    let value = s + EULER_GAMMA + log_u;
    let err = tail + DD_EPS * ((3 * k + 8) as f64 * s.hi + 8.0 * log_u.hi.abs() + 2.0);
    Approx { value, err }
}

/// e^u / u * sum_{k<K} k! / u^k, truncated at the smallest term.
pub(crate) fn ei_asymptotic(u: Dd) -> Approx {
    let uf = u.to_f64();
    let mut t = Dd::ONE;
    let mut s = Dd::ONE;
    let mut k = 1u32;
    let mut last = 1.0;
    while (k as f64) < uf {
        let next = (t * k as f64) / u;
        if next.hi >= last {
            break;
        }
        t = next;
        last = t.hi;
        s += t;
        k += 1;
        if t.hi < 1e-34 {
            break;
        }
    }
    let pref = u.exp() / u;
    let value = pref * s;
    let err = pref.hi
        * (last * (2.0 + (2.0 * std::f64::consts::PI * uf).sqrt()) + DD_EPS * (2.0 * k as f64 + 4.0 * uf + 8.0));
    Approx { value, err }
}

/// li(x) for x > 1 in double-double.
pub fn li_approx(x: f64) -> Result<Approx> {
    if !(x > 1.0) || !x.is_finite() {
        return Err(domain("li", x));
    }
    li_from_log_approx(ln_approx(x))
}

/// li(x^p) for x > 1, p > 0, without rounding x^p to binary64.
pub fn li_pow(x: f64, p: f64) -> Result<Approx> {
    if !(x > 1.0) || !(p > 0.0) {
        return Err(domain("li(x^p)", x));
    }
    li_from_log_approx(ln_approx(x).scale(p))
}

pub fn li(x: f64) -> Result<LiValue> {
    let a = li_approx(x)?;
    Ok(LiValue { value: a.f64(), abs_error: a.f64_err() })
}

fn check_interval(what: &'static str, a: f64, b: f64, min: f64) -> Result<()> {
    if !(a >= min) || !a.is_finite() {
        return Err(domain(what, a));
    }
    if !(b >= a) || !b.is_finite() {
        return Err(domain(what, b));
    }
    Ok(())
}

/// t li(t) - li(t^2), an antiderivative of li.
pub fn antideriv_li(t: f64) -> Result<Approx> {
    let tl = li_approx(t)?.scale(t);
    Ok(tl.sub(li_pow(t, 2.0)?))
}

/// log log t - li(t)/t, an antiderivative of li(t)/t^2.
pub fn antideriv_li_over_t2(t: f64) -> Result<Approx> {
    let l = ln_approx(t);
    let ll = Approx { value: l.value.ln(), err: l.err / l.value.hi + 8.0 * DD_EPS };
    Ok(ll.sub(li_approx(t)?.div_f64(t)))
}

/// log t + log log t - (log t + 1) li(t)/t, an antiderivative of li(t) log t / t^2.
pub fn antideriv_li_logt_over_t2(t: f64) -> Result<Approx> {
    let l = ln_approx(t);
    let ll = Approx { value: l.value.ln(), err: l.err / l.value.hi + 8.0 * DD_EPS };
    let lp1 = l.add(Approx::exact(Dd::ONE));
    Ok(l.add(ll).sub(lp1.mul(li_approx(t)?).div_f64(t)))
}

fn definite(what: &'static str, f: fn(f64) -> Result<Approx>, a: f64, b: f64) -> Result<Approx> {
    check_interval(what, a, b, 2.0)?;
    if a == b {
        return Ok(Approx::exact(Dd::ZERO));
    }
    Ok(f(b)?.sub(f(a)?))
}

pub fn int_li_approx(a: f64, b: f64) -> Result<Approx> {
    definite("integral of li", antideriv_li, a, b)
}

pub fn int_li_over_t2_approx(a: f64, b: f64) -> Result<Approx> {
    definite("integral of li/t^2", antideriv_li_over_t2, a, b)
}

pub fn int_li_logt_over_t2_approx(a: f64, b: f64) -> Result<Approx> {
    definite("integral of li log t/t^2", antideriv_li_logt_over_t2, a, b)
}

/// Integral of li(t) over `[a, b]`, `2 <= a <= b`.
pub fn int_li(a: f64, b: f64) -> Result<f64> {
    Ok(int_li_approx(a, b)?.f64())
}

pub fn int_li_over_t2(a: f64, b: f64) -> Result<f64> {
    Ok(int_li_over_t2_approx(a, b)?.f64())
}

pub fn int_li_logt_over_t2(a: f64, b: f64) -> Result<f64> {
    Ok(int_li_logt_over_t2_approx(a, b)?.f64())
}

/// (li(t) - t (L^3 + L^2 + 2L + 6) / L^4) / 24 with L = log t. The difference
/// cancels heavily for large t, so it is formed in double-double.
pub fn g_function_approx(t: f64) -> Result<Approx> {
    if !(t > 1.0) || !t.is_finite() {
        return Err(domain("G", t));
    }
    let l = ln_approx(t);
    let lv = l.value;
    let poly = ((lv + 1.0) * lv + 2.0) * lv + 6.0;
    let rat = Approx { value: poly * t / lv.powi(4), err: 0.0 };
    // relative sensitivity of t * poly / L^4 to L is at most 4 / L
    let rat = Approx { err: rat.value.hi.abs() * (4.0 * l.err / lv.hi + 16.0 * DD_EPS), ..rat };
    Ok(li_approx(t)?.sub(rat).div_f64(24.0))
}

#[allow(non_snake_case)]
pub fn G(t: f64) -> Result<f64> {
    Ok(g_function_approx(t)?.f64())
}

/// li(x) in plain binary64 with a rigorous error bound, for loops that
/// evaluate li millions of times and can afford about 1e-14 relative error.
pub fn li_f64(x: f64) -> Result<LiValue> {
    if !(x > 1.0) || !x.is_finite() {
        return Err(domain("li", x));
    }
    let u = x.ln();
    if u > 100.0 {
        return li(x);
    }
    // positive series Ei(u) = gamma + log u + sum u^k / (k k!)
    let mut a = 1.0;
    let mut sum = 0.0;
    let mut k = 1.0;
    loop {
        a = a * u / k;
        let t = a / k;
        sum += t;
        if k > 2.0 * u && t <= F64_EPS * sum {
            break;
        }
        k += 1.0;
    }
    let g = EULER_GAMMA.hi;
    let lu = u.ln();
    let value = sum + g + lu;
    // terms carry 2k + 1 roundings, the running sum k more; the tail is
    // below the last term since the ratio is under 1/2 past k = 2u
    let mut err = (3.0 * k + 4.0) * F64_EPS * sum + F64_EPS * sum;
    err += 4.0 * F64_EPS * (g + lu.abs() + value.abs());
    // log x itself carries at most one rounding: d li / du = x / u
    err += 2.0 * F64_EPS * x;
    Ok(LiValue { value, abs_error: err })
}

/// Value of G(x), the comparison value 1.1331 x / log^5 x, and whether the
/// inequality G(x) <= 1.1331 x / log^5 x holds.
pub fn g_bound_check(x: f64) -> Result<(f64, f64, bool)> {
    let g = G(x)?;
    let bound = 1.1331 * x / x.ln().powi(5);
    Ok((g, bound, g <= bound))
}
