//! Tables of imaginary parts of nontrivial zeta zeros, the zero sums
//! over them, and the truncated explicit formula for the integral of psi.
//!
//! Every computation here takes Re(rho) = 1/2 for the supplied zeros; the
//! reports carry that assumption in their `rh_assumed` field.

use std::fs;
use std::path::{Path, PathBuf};

use crate::compensated::CompensatedSum;
use crate::constants::ConstantSet;
use crate::dd::Dd;
use crate::error::{domain, Error, Result};
use crate::exec::Execution;
use crate::primes::SieveConfig;
use crate::quad::adaptive;
use crate::stepintegrals::evaluate;

const FIRST_ZERO: f64 = 14.134725;
const CHUNK: usize = 4096;

static BUNDLED: &str = include_str!("../data/zeros_1k.txt");

#[derive(Clone, Debug, PartialEq)]
pub struct ZeroTable {
    pub gammas: Vec<f64>,
    pub source: String,
}

impl ZeroTable {
    /// Parses one positive decimal per line, ascending. Blank lines and
    /// lines starting with `#` are skipped.
    pub fn parse(text: &str, source: impl Into<String>) -> Result<ZeroTable> {
        let mut gammas = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |msg: String| Error::ZeroTable { line: k + 1, msg };
            let g: f64 = line.parse().map_err(|_| bad(format!("cannot parse `{line}`")))?;
            if !(g > 0.0) || !g.is_finite() {
                return Err(bad(format!("non-positive entry {line}")));
            }
            if let Some(&prev) = gammas.last() {
                if g <= prev {
                    return Err(bad(format!("{g} does not exceed the previous entry {prev}")));
                }
            } else if (g - FIRST_ZERO).abs() > 5e-7 {
                return Err(bad(format!("first zero {g} is not 14.134725")));
            }
            gammas.push(g);
        }
        if gammas.is_empty() {
            return Err(Error::ZeroTable { line: 0, msg: "no zeros".into() });
        }
        Ok(ZeroTable { gammas, source: source.into() })
    }

    /// The first 1000 zeros, shipped with the crate.
    pub fn bundled() -> ZeroTable {
        ZeroTable::parse(BUNDLED, "bundled: first 1000 zeros").expect("bundled table is valid")
    }

    pub fn count(&self) -> usize {
        self.gammas.len()
    }

    pub fn height(&self) -> f64 {
        *self.gammas.last().expect("tables are nonempty")
    }

    /// The first `n` zeros (all of them if `n` exceeds the count).
    pub fn truncated(&self, n: usize) -> Result<ZeroTable> {
        if n == 0 {
            return Err(Error::ZeroTable { line: 0, msg: "no zeros".into() });
        }
        let n = n.min(self.count());
        Ok(ZeroTable { gammas: self.gammas[..n].to_vec(), source: format!("{} (first {n})", self.source) })
    }

    /// Deterministic chunked sum of `f` over the zeros.
    fn sum(&self, exec: Execution, f: impl Fn(f64) -> f64 + Sync + Send) -> f64 {
        let chunks: Vec<&[f64]> = self.gammas.chunks(CHUNK).collect();
        let parts = exec.map(&chunks, |c| c.iter().map(|&g| f(g)).collect::<CompensatedSum>());
        parts.iter().fold(CompensatedSum::ZERO, |acc, p| acc.merge(p)).value()
    }
}

pub fn load_zeros(path: impl AsRef<Path>) -> Result<ZeroTable> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    ZeroTable::parse(&text, path.display().to_string())
}

/// Where to look for a large table: `PRIMINT_ZEROS`, then `data/zeros_100k.txt`
/// under the current directory.
pub fn default_large_table() -> Option<PathBuf> {
    if let Some(p) = std::env::var_os("PRIMINT_ZEROS") {
        return Some(PathBuf::from(p));
    }
    let p = PathBuf::from("data/zeros_100k.txt");
    p.exists().then_some(p)
}

fn omega_term(g: f64) -> f64 {
    2.0 / ((0.25 + g * g).sqrt() * (2.25 + g * g).sqrt())
}

fn re_rho_term(g: f64) -> f64 {
    1.0 / (0.25 + g * g)
}

/// 2 sum 1/|rho (rho + 1)| over the table, pairing each zero with its conjugate.
pub fn omega_partial(zt: &ZeroTable) -> f64 {
    zt.sum(Execution::default(), omega_term)
}

/// 2 sum Re(rho)/|rho|^2 over the table.
pub fn re_rho_sum_partial(zt: &ZeroTable) -> f64 {
    zt.sum(Execution::default(), re_rho_term)
}

/// The limit of [`re_rho_sum_partial`], 1 + gamma/2 - log(4 pi)/2.
pub fn re_rho_sum_limit(cs: &ConstantSet) -> Result<f64> {
    Ok(cs.value("lambda0")? / 2.0)
}

/// Estimate of a sum over the zeros above the table, from the zero-counting
/// function N(T) = N0(T) + 7/8 + S(T) + O(1/T). Used for reporting only.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TailEstimate {
    pub height: f64,
    pub value: f64,
    pub uncertainty: f64,
}

fn n0(t: f64) -> f64 {
    let a = t / std::f64::consts::TAU;
    a * a.ln() - a
}

/// |S(t)| <= 0.112 log t + 0.278 log log t + 2.51 (Trudgian), plus 0.2/t for
/// the remainder in the counting formula.
fn counting_error(t: f64) -> f64 {
    0.112 * t.ln() + 0.278 * t.ln().ln() + 2.51 + 0.2 / t
}

/// Tail of sum_{gamma > T} f(gamma) for decreasing f, where T is the last
/// tabulated height and the table holds all zeros up to T. Stieltjes
/// integration against N gives
/// integral_T^inf f dN0 + f(T)(N0(T) + 7/8 - N(T)) - integral_T^inf E f',
/// and the last term is at most sup|E| f(T).
fn tail(zt: &ZeroTable, f: impl Fn(f64) -> f64) -> TailEstimate {
    let t = zt.height();
    let density = |v: f64| {
        let g = v.exp();
        f(g) * g * (g / std::f64::consts::TAU).ln() / std::f64::consts::TAU
    };
    let a = t.ln();
    let main = adaptive(density, a, a + 80.0, 0.0, 1e-13).value;
    let value = main + f(t) * (n0(t) + 0.875 - zt.count() as f64);
    TailEstimate { height: t, value, uncertainty: counting_error(t) * f(t) }
}

pub fn omega_tail(zt: &ZeroTable) -> TailEstimate {
    tail(zt, omega_term)
}

pub fn re_rho_tail(zt: &ZeroTable) -> TailEstimate {
    tail(zt, re_rho_term)
}

/// Sum over the trivial zeros, sum_{r >= 1} x^{1-2r} / (2r(2r-1)), with a
/// geometric tail bound. Returns (value, bound on the truncation).
fn trivial_series(x: f64) -> (f64, f64) {
    let q = 1.0 / (x * x);
    let mut p = 1.0 / x;
    let mut s = 0.0;
    let mut r = 1.0;
    loop {
        let term = p / (2.0 * r * (2.0 * r - 1.0));
        s += term;
        p *= q;
        let next = p / ((2.0 * r + 2.0) * (2.0 * r + 1.0));
        let bound = next / (1.0 - q);
        if bound < 1e-18 * s {
            return (s, bound);
        }
        r += 1.0;
    }
}

/// delta(x) = x^2/2 + (zeta'/zeta)(-1) - x log 2 pi - sum_r x^{1-2r}/(2r(2r-1)).
pub fn delta_smooth(x: f64, cs: &ConstantSet) -> Result<f64> {
    if !(x >= 2.0) || !x.is_finite() {
        return Err(domain("delta_smooth", x));
    }
    let (s, _) = trivial_series(x);
    Ok(0.5 * x * x + log_deriv_at_minus_one(cs)? - x * cs.value("c0")? - s)
}

/// (zeta'/zeta)(-1) = -12 zeta'(-1).
fn log_deriv_at_minus_one(cs: &ConstantSet) -> Result<f64> {
    Ok(cs.value("c1")? - 2.0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExplicitFormula {
    pub x: f64,
    /// integral_2^x psi - delta(x)
    pub lhs: f64,
    /// -2 sum Re x^{1+rho} / (rho (rho + 1)) over the table
    pub rhs: f64,
    pub residual: f64,
    pub zeros_used: usize,
    pub rh_assumed: bool,
}

/// -2 sum Re x^{1+rho}/(rho(rho+1)) with rho = 1/2 + i gamma. The phase
/// gamma log x reaches about 1e6 for 1e5 zeros at x = 1e6; it is formed and
/// reduced modulo 2 pi in double-double so that the reduction adds no error
/// beyond the table's own precision.
pub fn zero_sum(x: f64, zt: &ZeroTable, exec: Execution) -> f64 {
    let lx = Dd::from_f64(x).ln();
    let s = zt.sum(exec, |g| {
        let (sin, cos) = phase(g, lx).sin_cos();
        // 1/(rho(rho+1)) with rho(rho+1) = 3/4 - g^2 + 2ig
        let a = 0.75 - g * g;
        let b = 2.0 * g;
        (a * cos + b * sin) / (a * a + b * b)
    });
    -2.0 * x.powf(1.5) * s
}

/// gamma log x reduced to [-pi, pi].
pub(crate) fn phase(g: f64, log_x: Dd) -> f64 {
    (Dd::from_f64(g) * log_x).rem_tau()
}

/// lhs computed from R1 = integral_2^x (psi - t) without forming x^2/2 twice:
/// integral_2^x psi - delta(x) = R1 - 2 - (zeta'/zeta)(-1) + x log 2 pi + series.
fn lhs_from_r1(x: f64, r1: f64, cs: &ConstantSet) -> Result<f64> {
    let (s, _) = trivial_series(x);
    Ok(r1 - 2.0 - log_deriv_at_minus_one(cs)? + x * cs.value("c0")? + s)
}

/// Explicit-formula residuals at several points from one sieve pass.
pub fn explicit_formula(
    points: &[f64],
    zt: &ZeroTable,
    cs: &ConstantSet,
    cfg: &SieveConfig,
) -> Result<Vec<ExplicitFormula>> {
    let reports = evaluate(points, cs, cfg)?;
    reports
        .iter()
        .map(|r| {
            let lhs = lhs_from_r1(r.x, r.r1, cs)?;
            let rhs = zero_sum(r.x, zt, cfg.execution);
            Ok(ExplicitFormula { x: r.x, lhs, rhs, residual: lhs - rhs, zeros_used: zt.count(), rh_assumed: true })
        })
        .collect()
}

/// (lhs, rhs, residual) at a single point.
pub fn explicit_formula_residual(x: f64, zt: &ZeroTable) -> Result<(f64, f64, f64)> {
    let r = explicit_formula(&[x], zt, ConstantSet::standard(), &SieveConfig::new(2, 3))?.remove(0);
    Ok((r.lhs, r.rhs, r.residual))
}

#[cfg(test)]
mod tests;
