//! The bound functions themselves: pure evaluators over constants and
//! exact prime data at the anchor points.

use crate::constants::ConstantSet;
use crate::error::{domain, Result};
use crate::logint::li;
use crate::primes::SieveConfig;
use crate::stepintegrals::evaluate;

/// Anchor of the upper bracket for the integral of pi - li.
pub const S_UPPER: f64 = 289.0;

fn li_f(x: f64) -> Result<f64> {
    Ok(li(x)?.value)
}

/// Exact prime data at a lower limit y.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Anchor {
    pub y: f64,
    pub pi_riemann: f64,
    /// psi(y) - y
    pub r: f64,
    /// integral_2^y (psi - t)
    pub r1: f64,
    /// integral_2^y (pi - li)
    pub int_pi_minus_li: f64,
    /// integral_2^y (Pi - li)
    pub int_pi_riemann_minus_li: f64,
}

impl Anchor {
    pub fn at(y: f64, cs: &ConstantSet) -> Result<Anchor> {
        if !(y >= 2.0) || !y.is_finite() {
            return Err(domain("anchor", y));
        }
        let r = evaluate(&[y], cs, &SieveConfig::new(2, 3))?.remove(0);
        Ok(Anchor {
            y,
            pi_riemann: r.pi_riemann,
            r: r.psi - y,
            r1: r.r1,
            int_pi_minus_li: r.int_pi_minus_li,
            int_pi_riemann_minus_li: r.int_pi_riemann_minus_li,
        })
    }

    /// d0(y) = Pi(y) - li(y) - R(y)/log y - R1(y)/(y log^2 y).
    pub fn d0(&self) -> Result<f64> {
        let l = self.y.ln();
        Ok(self.pi_riemann - li_f(self.y)? - self.r / l - self.r1 / (self.y * l * l))
    }
}

/// Constants shared by the bracket families.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Consts {
    pub c0: f64,
    pub c1: f64,
    pub lambda0: f64,
}

impl Consts {
    pub fn from_set(cs: &ConstantSet) -> Result<Consts> {
        Ok(Consts { c0: cs.value("c0")?, c1: cs.value("c1")?, lambda0: cs.value("lambda0")? })
    }
}

fn check_delta(delta: f64) -> Result<()> {
    if delta > 0.0 && delta.is_finite() {
        Ok(())
    } else {
        Err(domain("delta", delta))
    }
}

/// h(x, d) = (3d/4)(x li(sqrt x) - li(x^{3/2})).
pub fn h(x: f64, delta: f64) -> Result<f64> {
    check_delta(delta)?;
    Ok(0.75 * delta * (x * li_f(x.sqrt())? - li_f(x.powf(1.5))?))
}

/// The delta part of d2: d (3/4 li(sqrt y) - sqrt y (3 log y + 2)/(2 log^2 y)).
fn d2_delta(y: f64, delta: f64) -> Result<f64> {
    let l = y.ln();
    Ok(delta * (0.75 * li_f(y.sqrt())? - y.sqrt() * (3.0 * l + 2.0) / (2.0 * l * l)))
}

fn c0_part(y: f64, k: &Consts) -> f64 {
    let l = y.ln();
    k.c0 * (1.0 / l + 1.0 / (l * l))
}

/// j0..j3 for the bracket of integral_y^x (Pi - li).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JCoefficients {
    pub j0: f64,
    pub j1: f64,
    pub j2: f64,
    pub j3: f64,
}

pub fn j_coefficients(a: &Anchor, delta: f64, k: &Consts) -> Result<JCoefficients> {
    check_delta(delta)?;
    let y = a.y;
    let l = y.ln();
    let d0 = a.d0()?;
    let dd = d2_delta(y, delta)?;
    let cp = c0_part(y, k);
    let y32 = y.powf(1.5);
    let hy = h(y, delta)?;
    let j0 = d0 + dd - cp;
    let j1 = -j0 * y - a.r1 / l - (k.c0 * y + delta * y32) / l + hy;
    let j2 = d0 - dd - cp + k.c1 / (y * l * l);
    let j3 = -j2 * y - hy - a.r1 / l + (k.c1 - k.c0 * y + delta * y32) / l;
    Ok(JCoefficients { j0, j1, j2, j3 })
}

/// Bracket for integral_y^x (Pi - li) under RH with d >= omega.
pub fn prop203_bounds(x: f64, a: &Anchor, delta: f64, k: &Consts) -> Result<(f64, f64)> {
    if !(x >= a.y) {
        return Err(domain("prop203_bounds: x below y", x));
    }
    let j = j_coefficients(a, delta, k)?;
    let hx = h(x, delta)?;
    Ok((j.j1 + j.j0 * x - hx, j.j3 + j.j2 * x + hx))
}

/// g(x) = -1.2762 (3 li(x^{3/2}) - 2x^{3/2}/log x + 4 li(x^{4/3}) - 3x^{4/3}/log x)
///        - li(x^{4/3}) - 5.1048 x^{5/4} / (5 log 2).
pub fn g(x: f64) -> Result<f64> {
    let l = x.ln();
    let x32 = x.powf(1.5);
    let x43 = x.powf(4.0 / 3.0);
    let li32 = li_f(x32)?;
    let li43 = li_f(x43)?;
    Ok(-1.2762 * (3.0 * li32 - 2.0 * x32 / l + 4.0 * li43 - 3.0 * x43 / l)
        - li43
        - 5.1048 * x.powf(1.25) / (5.0 * std::f64::consts::LN_2))
}

pub fn f1(x: f64, delta: f64) -> Result<f64> {
    Ok((0.75 * delta - 1.0) * li_f(x.powf(1.5))? - 0.75 * delta * x * li_f(x.sqrt())?)
}

pub fn f2(x: f64, delta: f64) -> Result<f64> {
    Ok(0.75 * delta * x * li_f(x.sqrt())? - (1.0 + 0.75 * delta) * li_f(x.powf(1.5))?)
}

/// J0..J3 of the bracket for integral_2^x (pi - li).
///
/// J0, J1 come from the lower Pi bracket at y = 2 and J2, J3 from the upper
/// one at y = 289. The prime-power correction integrates to
/// -li(x^{3/2}) + g(x) + li(2^{3/2}) - g(2) over [2, x], so J1 carries -g(2).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BigJ {
    pub j0: f64,
    pub j1: f64,
    pub j2: f64,
    pub j3: f64,
}

pub fn big_j(two: &Anchor, s: &Anchor, delta: f64, k: &Consts) -> Result<BigJ> {
    let lo = j_coefficients(two, delta, k)?;
    let hi = j_coefficients(s, delta, k)?;
    let j1 = li_f(2f64.powf(1.5))? - g(2.0)? + lo.j1;
    let j3 = li_f(s.y.powf(1.5))? + s.int_pi_minus_li + hi.j3;
    Ok(BigJ { j0: lo.j0, j1, j2: hi.j2, j3 })
}

/// Bracket for integral_2^x (pi - li); the lower end holds for x >= 2, the
/// upper for x >= 289.
pub fn thm102_bounds(x: f64, j: &BigJ, delta: f64) -> Result<(f64, f64)> {
    check_delta(delta)?;
    if !(x >= 2.0) {
        return Err(domain("thm102_bounds", x));
    }
    let lower = j.j1 + j.j0 * x + f1(x, delta)? + g(x)?;
    let upper = j.j3 + j.j2 * x + f2(x, delta)?;
    Ok((lower, upper))
}

/// Bracket for integral_2^x (theta - t): lower for x >= 2, upper for x >= 121.
pub fn thm107_bounds(x: f64, omega_hat: f64, k: &Consts) -> Result<(f64, f64)> {
    check_delta(omega_hat)?;
    let x32 = x.powf(1.5);
    let lower = -(omega_hat + 2.0 / 3.0) * x32 - x.powf(4.0 / 3.0) - x * k.c0;
    let upper = (omega_hat - 2.0 / 3.0) * x32 - x * k.c0;
    Ok((lower, upper))
}

/// Bracket for R1(x) = integral_2^x (psi - t) under RH.
pub fn lemma201_bounds(x: f64, omega_hat: f64, k: &Consts) -> (f64, f64) {
    let x32 = x.powf(1.5);
    let lower = k.c1 - k.c0 * x - omega_hat * x32 - x / (2.0 * (x * x - 1.0));
    let upper = k.c1 - k.c0 * x + omega_hat * x32;
    (lower, upper)
}

/// Envelope x^{3/2}/log x times (lower, upper) coefficients.
pub fn log_envelope(x: f64, lower: f64, upper: f64) -> (f64, f64) {
    let e = x.powf(1.5) / x.ln();
    (lower * e, upper * e)
}

/// 0.024334/(2 log^2 x) (1 + 4/log x), the width in the theta and psi brackets.
pub fn theta_mean_width(x: f64) -> f64 {
    let l = x.ln();
    0.024334 / (2.0 * l * l) * (1.0 + 4.0 / l)
}

pub fn a1_bound(x: f64) -> f64 {
    let l = x.ln();
    0.024334 / (3.0 * l.powi(3)) * (1.0 + 15.0 / (4.0 * l))
}

pub fn a2_bound(x: f64) -> f64 {
    let l = x.ln();
    0.024334 / (2.0 * l * l) * (1.0 + 2.0 / l)
}
