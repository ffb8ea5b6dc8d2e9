//! Identities linking the step-function integrals to prime sums, smooth
//! integrals and constants. Each side is computed along a different route:
//! the walk integrates the step functions directly, the other side uses
//! prime sums, closed forms and adaptive quadrature of the smooth parts.

use std::fmt;
use std::str::FromStr;

use crate::constants::ConstantSet;
use crate::error::{Error, Result};
use crate::logint::li;
use crate::primes::{pi_riemann_from_roots, prefix_sums, SieveConfig};
use crate::quad::adaptive;

use super::report::report_from_prefix;
use super::walk::walk;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IdentityId {
    /// pi(x) = theta(x)/log x + integral of theta(t)/(t log^2 t)
    PiFromTheta,
    /// theta(x) = pi(x) log x - integral of pi(t)/t
    ThetaFromPi,
    /// integral of (pi - li)/t^2 = (li(x) - pi(x))/x + C + A1(x)
    ReciprocalMean,
    /// sum 1/p = pi(x)/x + integral of pi(t)/t^2
    Abel,
    /// log log x = li(x)/x + integral_2^x li/t^2 - integral_2^e li/t^2 - li(e)/e
    LogLog,
    /// integral of (pi - li) log t/t^2 = K + A1 + A2 + (li - pi)(log x + 1)/x
    LogWeighted,
    /// integral of (theta - t)/t^2 = D - (theta - x)/x + A2
    ThetaMean,
    /// Pi(x) - li(x) = d0(2) + R(x)/log x + R1(x)/(x log^2 x) + integral of R1 weights
    RiemannPi,
}

impl IdentityId {
    pub const ALL: [IdentityId; 8] = [
        IdentityId::PiFromTheta,
        IdentityId::ThetaFromPi,
        IdentityId::ReciprocalMean,
        IdentityId::Abel,
        IdentityId::LogLog,
        IdentityId::LogWeighted,
        IdentityId::ThetaMean,
        IdentityId::RiemannPi,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IdentityId::PiFromTheta => "pi-from-theta",
            IdentityId::ThetaFromPi => "theta-from-pi",
            IdentityId::ReciprocalMean => "reciprocal-mean",
            IdentityId::Abel => "abel",
            IdentityId::LogLog => "loglog",
            IdentityId::LogWeighted => "log-weighted",
            IdentityId::ThetaMean => "theta-mean",
            IdentityId::RiemannPi => "riemann-pi",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentityId {
    type Err = Error;
    fn from_str(s: &str) -> Result<IdentityId> {
        IdentityId::ALL.into_iter().find(|id| id.as_str() == s).ok_or_else(|| Error::UnknownIdentity(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCheck {
    pub id: IdentityId,
    pub x: f64,
    pub lhs: f64,
    pub rhs: f64,
    /// |lhs - rhs| / max(1, |lhs|, |rhs|)
    pub residual: f64,
}

fn smooth_integral(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    // the integrands are smooth in u = log t
    adaptive(
        |u| {
            let t = u.exp();
            f(t) * t
        },
        a.ln(),
        b.ln(),
        1e-17,
        1e-15,
    )
    .value
}

fn li_f(t: f64) -> f64 {
    li(t).map(|v| v.value).unwrap_or(f64::NAN)
}

/// Checks the identities at every point, with one walk and one prefix pass.
pub fn check_identities(
    ids: &[IdentityId],
    points: &[f64],
    cs: &ConstantSet,
    cfg: &SieveConfig,
) -> Result<Vec<IdentityCheck>> {
    let sums = prefix_sums(points, cfg)?;
    let walked = walk(points, cfg)?;
    let c = cs.value("C")?;
    let k = cs.value("K")?;
    let d = cs.value("D")?;
    let e = std::f64::consts::E;
    let loglog_const = smooth_integral(|t| li_f(t) / (t * t), 2.0, e) + li_f(e) / e;
    let ln2 = std::f64::consts::LN_2;
    let d0_2 = 2.0 / ln2 - li_f(2.0);

    let mut out = Vec::with_capacity(ids.len() * points.len());
    for (ps, w) in sums.iter().zip(&walked) {
        let x = ps.x;
        let r = report_from_prefix(ps, cs)?;
        let l = x.ln();
        let pi = ps.pi() as f64;
        let theta = ps.theta();
        let lix = li_f(x);
        for &id in ids {
            let (lhs, rhs) = match id {
                IdentityId::PiFromTheta => (pi, theta / l + w.theta_over_t_log2),
                IdentityId::ThetaFromPi => (theta, pi * l - w.pi_over_t),
                IdentityId::ReciprocalMean => {
                    (w.pi_over_t2 - smooth_integral(|t| li_f(t) / (t * t), 2.0, x), (lix - pi) / x + c + r.a1)
                }
                IdentityId::Abel => (ps.primes.sum_inv.value(), pi / x + w.pi_over_t2),
                IdentityId::LogLog => (l.ln(), lix / x + smooth_integral(|t| li_f(t) / (t * t), 2.0, x) - loglog_const),
                IdentityId::LogWeighted => (
                    w.pi_log_over_t2 - smooth_integral(|t| li_f(t) * t.ln() / (t * t), 2.0, x),
                    k + r.a1 + r.a2 + (lix - pi) * (l + 1.0) / x,
                ),
                IdentityId::ThetaMean => (w.theta_over_t2 - (l - ln2), d - (theta - x) / x + r.a2),
                IdentityId::RiemannPi => {
                    let big_pi = pi_riemann_from_roots(ps.n(), ps.pi());
                    let rr = ps.psi() - x;
                    (big_pi - lix, d0_2 + rr / l + w.r1 / (x * l * l) + w.r1_weighted)
                }
            };
            let residual = (lhs - rhs).abs() / 1f64.max(lhs.abs()).max(rhs.abs());
            out.push(IdentityCheck { id, x, lhs, rhs, residual });
        }
    }
    Ok(out)
}

/// Relative residual of one identity at one point.
pub fn check_identity(name: &str, x: f64) -> Result<f64> {
    let id: IdentityId = name.parse()?;
    let r = check_identities(&[id], &[x], ConstantSet::standard(), &SieveConfig::new(2, 3))?;
    Ok(r[0].residual)
}
