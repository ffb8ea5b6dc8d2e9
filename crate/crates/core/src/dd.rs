//! Double-double arithmetic: an unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`,
//! giving roughly 106 bits of significand. Products use Dekker splitting so the
//! results do not depend on hardware fused multiply-add.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// Unit roundoff of the double-double format (conservative).
pub const DD_EPS: f64 = 4.93e-32;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn split(a: f64) -> (f64, f64) {
    const SPLITTER: f64 = 134_217_729.0; // 2^27 + 1
    if a.abs() > 6.69692879491417e299 {
        // scale down to avoid overflow in the splitter product
        let s = a * 3.725_290_298_461_914e-9;
        let t = SPLITTER * s;
        let hi = t - (t - s);
        let lo = s - hi;
        (hi * 268_435_456.0, lo * 268_435_456.0)
    } else {
        let t = SPLITTER * a;
        let hi = t - (t - a);
        (hi, a - hi)
    }
}

/// Exact product: `a * b == p + e`.
#[inline]
pub fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    let e = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
    (p, e)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    pub const PI: Dd = Dd { hi: std::f64::consts::PI, lo: 1.224646799147353207e-16 };
    pub const TAU: Dd = Dd { hi: std::f64::consts::TAU, lo: 2.449293598294706414e-16 };
    pub const LN2: Dd = Dd { hi: std::f64::consts::LN_2, lo: 2.319046813846299558e-17 };
    pub const E: Dd = Dd { hi: std::f64::consts::E, lo: 1.445646891729250158e-16 };

    #[inline]
    pub const fn new(hi: f64, lo: f64) -> Dd {
        Dd { hi, lo }
    }

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    /// Exact for all `u64` values.
    pub fn from_u64(n: u64) -> Dd {
        let hi = n as f64;
        let lo = (n as i128 - hi as i128) as f64;
        let (h, l) = quick_two_sum(hi, lo);
        Dd { hi: h, lo: l }
    }

    /// Exact for values below 2^106.
    pub fn from_u128(n: u128) -> Dd {
        let hi = n as f64;
        let rest = n as i128 - hi as i128;
        let (h, l) = quick_two_sum(hi, rest as f64);
        Dd { hi: h, lo: l }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.hi.is_finite()
    }

    #[inline]
    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    /// Multiplication by a power of two; exact barring overflow.
    #[inline]
    pub fn scale(self, two_pow: f64) -> Dd {
        Dd { hi: self.hi * two_pow, lo: self.lo * two_pow }
    }

    pub fn mul_f64(self, b: f64) -> Dd {
        let (p, mut e) = two_prod(self.hi, b);
        e += self.lo * b;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    pub fn div_f64(self, b: f64) -> Dd {
        let q1 = self.hi / b;
        let (p, e) = two_prod(q1, b);
        let (s, mut f) = two_sum(self.hi, -p);
        f -= e;
        f += self.lo;
        let q2 = (s + f) / b;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }
    }

    pub fn add_f64(self, b: f64) -> Dd {
        let (s, mut e) = two_sum(self.hi, b);
        e += self.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    pub fn sqr(self) -> Dd {
        let (p, mut e) = two_prod(self.hi, self.hi);
        e += 2.0 * self.hi * self.lo;
        e += self.lo * self.lo;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    pub fn recip(self) -> Dd {
        Dd::ONE / self
    }

    pub fn sqrt(self) -> Dd {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 { Dd::ZERO } else { Dd::from_f64(f64::NAN) };
        }
        let x = 1.0 / self.hi.sqrt();
        let ax = self.hi * x;
        let corr = (self - Dd::from_f64(ax).sqr()).hi * (x * 0.5);
        Dd::from_f64(ax).add_f64(corr)
    }

    pub fn powi(self, n: i32) -> Dd {
        if n == 0 {
            return Dd::ONE;
        }
        let mut base = self;
        let mut k = n.unsigned_abs();
        let mut acc = Dd::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc *= base;
            }
            k >>= 1;
            if k > 0 {
                base = base.sqr();
            }
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    /// Full precision for results above roughly 1e-290; below that the low
    /// word becomes subnormal.
    pub fn exp(self) -> Dd {
        if self.hi > 709.78 {
            return Dd::from_f64(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Dd::ZERO;
        }
        if self.hi == 0.0 && self.lo == 0.0 {
            return Dd::ONE;
        }
        let k = (self.hi / Dd::LN2.hi).round();
        let r = (self - Dd::LN2.mul_f64(k)).scale(1.0 / 512.0);
        // expm1(r) by Taylor series; |r| < 6.8e-4 so ten terms are plenty
        let mut term = r;
        let mut s = r;
        for i in 2..=11 {
            term = (term * r).div_f64(i as f64);
            s += term;
            if term.hi.abs() < 1e-36 {
                break;
            }
        }
        // expm1(2r) = 2 expm1(r) + expm1(r)^2
        for _ in 0..9 {
            s = s.scale(2.0) + s.sqr();
        }
        let v = s.add_f64(1.0);
        ldexp(v, k as i32)
    }

    /// Natural logarithm by one Newton step on `exp` from the binary64 guess.
    pub fn ln(self) -> Dd {
        if self.hi <= 0.0 {
            return Dd::from_f64(if self.hi == 0.0 { f64::NEG_INFINITY } else { f64::NAN });
        }
        if self.hi == 1.0 && self.lo == 0.0 {
            return Dd::ZERO;
        }
        if !(1e-200..=1e200).contains(&self.hi) {
            // keep exp(-x) away from the subnormal range
            let k = self.hi.log2().floor();
            let m = ldexp(self, -(k as i32));
            return m.ln() + Dd::LN2.mul_f64(k);
        }
        let x = Dd::from_f64(self.hi.ln());
        x + self * (-x).exp() - Dd::ONE
    }

    /// `ln(1 + self)`, accurate for small arguments.
    pub fn ln_1p(self) -> Dd {
        if self.hi.abs() < 1e-3 {
            let mut pow = self;
            let mut s = self;
            let mut k = 2;
            loop {
                pow = -(pow * self);
                let t = pow.div_f64(k as f64);
                s += t;
                if t.hi.abs() <= 1e-34 * s.hi.abs() || k > 60 {
                    break;
                }
                k += 1;
            }
            s
        } else {
            (Dd::ONE + self).ln()
        }
    }

    pub fn floor(self) -> Dd {
        let hi = self.hi.floor();
        if hi == self.hi {
            let (h, l) = quick_two_sum(hi, self.lo.floor());
            Dd { hi: h, lo: l }
        } else {
            Dd { hi, lo: 0.0 }
        }
    }

    pub fn round(self) -> Dd {
        (self + Dd::from_f64(0.5)).floor()
    }

    /// Reduce to `(-pi, pi]`; returns the reduced angle as binary64.
    pub fn rem_tau(self) -> f64 {
        let k = (self / Dd::TAU).round();
        let r = self - Dd::TAU * k;
        r.to_f64()
    }

    /// Parse a plain decimal literal such as `-0.5772156649015328606065`.
    pub fn parse(s: &str) -> Option<Dd> {
        let s = s.trim();
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let (mant, exp10) = match body.find(['e', 'E']) {
            Some(i) => (&body[..i], body[i + 1..].parse::<i32>().ok()?),
            None => (body, 0),
        };
        let mut v = Dd::ZERO;
        let mut frac_digits = 0i32;
        let mut seen_dot = false;
        let mut any = false;
        for c in mant.chars() {
            match c {
                '0'..='9' => {
                    v = v.mul_f64(10.0).add_f64((c as u8 - b'0') as f64);
                    any = true;
                    if seen_dot {
                        frac_digits += 1;
                    }
                }
                '.' if !seen_dot => seen_dot = true,
                '_' => {}
                _ => return None,
            }
        }
        if !any {
            return None;
        }
        let e = exp10 - frac_digits;
        let ten = Dd::from_f64(10.0);
        v = match e.cmp(&0) {
            Ordering::Greater => v * ten.powi(e),
            Ordering::Less => v / ten.powi(-e),
            Ordering::Equal => v,
        };
        Some(if neg { -v } else { v })
    }

    /// Scientific notation with `digits` significant digits.
    pub fn to_sci(self, digits: usize) -> String {
        if !self.is_finite() {
            return format!("{}", self.hi);
        }
        if self.hi == 0.0 {
            return "0".to_string();
        }
        let neg = self.hi < 0.0;
        let mut r = self.abs();
        let mut e = r.hi.log10().floor() as i32;
        let ten = Dd::from_f64(10.0);
        r = if e >= 0 { r / ten.powi(e) } else { r * ten.powi(-e) };
        while r.hi >= 10.0 {
            r = r.div_f64(10.0);
            e += 1;
        }
        while r.hi < 1.0 {
            r = r.mul_f64(10.0);
            e -= 1;
        }
        let mut ds = Vec::with_capacity(digits + 1);
        for _ in 0..=digits {
            let d = r.hi.floor().clamp(0.0, 9.0);
            ds.push(d as u8);
            r = (r - Dd::from_f64(d)).mul_f64(10.0);
            if r.hi < 0.0 {
                r = Dd::ZERO;
            }
        }
        // round half up on the guard digit
        if ds[digits] >= 5 {
            let mut i = digits;
            loop {
                if i == 0 {
                    ds.insert(0, 1);
                    e += 1;
                    break;
                }
                i -= 1;
                if ds[i] == 9 {
                    ds[i] = 0;
                } else {
                    ds[i] += 1;
                    break;
                }
            }
        }
        ds.truncate(digits);
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        out.push((b'0' + ds[0]) as char);
        if digits > 1 {
            out.push('.');
            for d in &ds[1..] {
                out.push((b'0' + d) as char);
            }
        }
        out.push_str(&format!("e{e}"));
        out
    }
}

fn ldexp(v: Dd, k: i32) -> Dd {
    // split the scaling so intermediate powers stay representable
    let mut v = v;
    let mut k = k;
    while k > 1000 {
        v = v.scale(2f64.powi(1000));
        k -= 1000;
    }
    while k < -1000 {
        v = v.scale(2f64.powi(-1000));
        k += 1000;
    }
    v.scale(2f64.powi(k))
}

impl From<f64> for Dd {
    fn from(x: f64) -> Dd {
        Dd::from_f64(x)
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(32);
        f.write_str(&self.to_sci(digits))
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Dd) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            o => o,
        }
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let e = e + t;
        let (s, e) = quick_two_sum(s, e);
        let e = e + f;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: Dd) -> Dd {
        let (p, mut e) = two_prod(self.hi, b.hi);
        e += self.hi * b.lo + self.lo * b.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add_f64(q3)
    }
}

impl Add<f64> for Dd {
    type Output = Dd;
    fn add(self, b: f64) -> Dd {
        self.add_f64(b)
    }
}

impl Sub<f64> for Dd {
    type Output = Dd;
    fn sub(self, b: f64) -> Dd {
        self.add_f64(-b)
    }
}

impl Mul<f64> for Dd {
    type Output = Dd;
    fn mul(self, b: f64) -> Dd {
        self.mul_f64(b)
    }
}

impl Div<f64> for Dd {
    type Output = Dd;
    fn div(self, b: f64) -> Dd {
        self.div_f64(b)
    }
}

impl AddAssign for Dd {
    fn add_assign(&mut self, b: Dd) {
        *self = *self + b;
    }
}

impl SubAssign for Dd {
    fn sub_assign(&mut self, b: Dd) {
        *self = *self - b;
    }
}

impl MulAssign for Dd {
    fn mul_assign(&mut self, b: Dd) {
        *self = *self * b;
    }
}

impl std::iter::Sum for Dd {
    fn sum<I: Iterator<Item = Dd>>(iter: I) -> Dd {
        iter.fold(Dd::ZERO, |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Dd, b: Dd, rel: f64) -> bool {
        let d = (a - b).abs().to_f64();
        d <= rel * b.abs().to_f64().max(1e-300)
    }

    fn atan_inv(n: f64) -> Dd {
        // arctan(1/n) by its Taylor series
        let x = Dd::ONE.div_f64(n);
        let x2 = x.sqr();
        let mut pow = x;
        let mut s = x;
        let mut k = 1;
        loop {
            pow = -(pow * x2);
            let t = pow.div_f64((2 * k + 1) as f64);
            s += t;
            if t.hi.abs() < 1e-36 {
                break;
            }
            k += 1;
        }
        s
    }

    #[test]
    fn pi_matches_machin() {
        let machin = atan_inv(5.0).mul_f64(16.0) - atan_inv(239.0).mul_f64(4.0);
        assert!(close(Dd::PI, machin, 1e-31), "{} vs {}", Dd::PI, machin);
        assert!(close(Dd::TAU, machin.scale(2.0), 1e-31));
    }

    #[test]
    fn ln2_matches_series() {
        // ln 2 = sum 1 / (k 2^k)
        let mut s = Dd::ZERO;
        let mut half_pow = Dd::ONE;
        for k in 1..=120 {
            half_pow = half_pow.scale(0.5);
            s += half_pow.div_f64(k as f64);
        }
        assert!(close(Dd::LN2, s, 1e-31));
    }

    #[test]
    fn e_matches_factorial_series() {
        let mut s = Dd::ONE;
        let mut t = Dd::ONE;
        for k in 1..40 {
            t = t.div_f64(k as f64);
            s += t;
        }
        assert!(close(Dd::E, s, 1e-31));
        assert!(close(Dd::ONE.exp(), s, 4e-31));
    }

    #[test]
    fn exp_ln_roundtrip() {
        for &x in &[1e-300, 1e-20, 0.3, 1.0, 2.5, 17.0, 1e8, 3.3e150, 1e300] {
            let d = Dd::from_f64(x);
            let back = d.ln().exp();
            // exp amplifies the absolute error of ln by |ln x|
            let tol = 1e-30 * (1.0 + x.ln().abs());
            assert!(close(back, d, tol), "x = {x}: {back}");
        }
        for &u in &[-600.0, -3.2, -1e-10, 1e-10, 0.75, 12.0, 300.0, 700.0] {
            let d = Dd::from_f64(u);
            // exp(u) near 1 carries absolute, not relative, precision
            let err = (d.exp().ln() - d).abs().to_f64();
            assert!(err <= 1e-30 * u.abs().max(1.0), "u = {u}");
        }
    }

    #[test]
    fn exp_addition_law() {
        let a = Dd::parse("1.2345678901234567890123456789").unwrap();
        let b = Dd::parse("-0.98765432109876543210987654321").unwrap();
        assert!(close((a + b).exp(), a.exp() * b.exp(), 1e-30));
    }

    #[test]
    fn ln_1p_small() {
        let x = Dd::from_f64(1e-20);
        let v = x.ln_1p();
        // ln(1+x) = x - x^2/2 + ...
        let expect = x - x.sqr().scale(0.5);
        assert!(close(v, expect, 1e-31));
        let y = Dd::from_f64(0.25);
        assert!(close(y.ln_1p(), Dd::from_f64(1.25).ln(), 1e-31));
    }

    #[test]
    fn sqrt_and_division() {
        let two = Dd::from_f64(2.0);
        let r = two.sqrt();
        assert!(close(r.sqr(), two, 1e-31));
        let third = Dd::ONE / Dd::from_f64(3.0);
        assert!(close(third.mul_f64(3.0), Dd::ONE, 1e-31));
        assert!(close(Dd::ONE.div_f64(7.0).mul_f64(7.0), Dd::ONE, 1e-31));
    }

    #[test]
    fn exact_integer_conversion() {
        let n = 123_456_789_012_345_678_901_234_567u128;
        let d = Dd::from_u128(n);
        assert_eq!(d.hi as u128 as i128 + d.lo as i128, n as i128);
        let m = u64::MAX - 12;
        let d = Dd::from_u64(m);
        assert_eq!((d.hi as i128 + d.lo as i128) as u64, m);
    }

    #[test]
    fn parse_and_print() {
        let g = Dd::parse("0.57721566490153286060651209008240243").unwrap();
        assert_eq!(g.to_sci(30), "5.77215664901532860606512090082e-1");
        assert_eq!(Dd::PI.to_sci(31), "3.141592653589793238462643383280e0");
        assert_eq!(Dd::parse("-1.5e3").unwrap().to_f64(), -1500.0);
        assert!(Dd::parse("abc").is_none());
    }

    #[test]
    fn reduction_modulo_tau() {
        let phi = Dd::TAU.mul_f64(1e6) + Dd::from_f64(0.125);
        assert!((phi.rem_tau() - 0.125).abs() < 1e-20);
    }

    #[test]
    fn powi_matches_repeated_product() {
        let x = Dd::parse("1.0000001").unwrap();
        let mut p = Dd::ONE;
        for _ in 0..37 {
            p *= x;
        }
        assert!(close(x.powi(37), p, 1e-30));
        assert!(close(x.powi(-37), p.recip(), 1e-30));
    }
}
