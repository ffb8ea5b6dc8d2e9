//! Integrals of the prime-counting step functions against their smooth
//! approximations, as exact prime sums minus closed forms.

use std::io::Write;

use crate::compensated::CompensatedSum;
use crate::constants::ConstantSet;
use crate::dd::{Dd, DD_EPS};
use crate::error::Result;
use crate::logint::{int_li_approx, int_li_logt_over_t2_approx, int_li_over_t2_approx, ln_approx, Approx};
use crate::primes::{prefix_sums, PrefixSums, SieveConfig};

const F64_EPS: f64 = f64::EPSILON / 2.0;

/// Per-field absolute error bounds of an [`IntegralReport`].
#[derive(Clone, Debug, Default, PartialEq)]
pub struct IntegralErrors {
    pub int_pi_minus_li: f64,
    pub int_pi_minus_li_over_t2: f64,
    pub int_pi_minus_li_logt_over_t2: f64,
    pub int_theta_minus_t: f64,
    pub int_theta_minus_t_over_t2: f64,
    pub r1: f64,
    pub int_psi_minus_t_over_t2: f64,
    pub a1: f64,
    pub a2: f64,
    pub int_pi_riemann_minus_li: f64,
}

impl IntegralErrors {
    fn max(&self) -> f64 {
        [
            self.int_pi_minus_li,
            self.int_pi_minus_li_over_t2,
            self.int_pi_minus_li_logt_over_t2,
            self.int_theta_minus_t,
            self.int_theta_minus_t_over_t2,
            self.r1,
            self.int_psi_minus_t_over_t2,
            self.a1,
            self.a2,
            self.int_pi_riemann_minus_li,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// All integrals run from 2 to `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegralReport {
    pub x: f64,
    pub pi: u64,
    pub theta: f64,
    pub psi: f64,
    pub pi_riemann: f64,
    /// integral of pi(t) - li(t)
    pub int_pi_minus_li: f64,
    /// integral of (pi(t) - li(t)) / t^2
    pub int_pi_minus_li_over_t2: f64,
    /// integral of (pi(t) - li(t)) log t / t^2
    pub int_pi_minus_li_logt_over_t2: f64,
    /// integral of theta(t) - t
    pub int_theta_minus_t: f64,
    /// integral of (theta(t) - t) / t^2
    pub int_theta_minus_t_over_t2: f64,
    /// integral of psi(t) - t
    pub r1: f64,
    /// integral of (psi(t) - t) / t^2
    pub int_psi_minus_t_over_t2: f64,
    /// sum 1/p - log log x - B
    pub a1: f64,
    /// sum log p / p - log x - E
    pub a2: f64,
    /// integral of Pi(t) - li(t), Pi the prime-power counting function
    pub int_pi_riemann_minus_li: f64,
    pub errors: IntegralErrors,
    /// Largest per-field error bound.
    pub abs_error_budget: f64,
}

/// A compensated sum of positive terms, each with relative error at most
/// `ulps` half-ulps.
fn positive_sum(s: &CompensatedSum, ulps: f64) -> Approx {
    let v = s.dd();
    Approx { value: v, err: (ulps + 2.0) * F64_EPS * v.hi.abs() }
}

fn exact_u64(n: u64) -> Approx {
    Approx::exact(Dd::from_u64(n))
}

/// The report at a checkpoint, from its prefix sums alone.
pub fn report_from_prefix(ps: &PrefixSums, cs: &ConstantSet) -> Result<IntegralReport> {
    let x = ps.x;
    let p = &ps.primes;
    let q = &ps.powers;
    let xd = Approx::exact(Dd::from_f64(x));
    let l = ln_approx(x);
    let ll = Approx { value: l.value.ln(), err: l.err / l.value.hi.abs().max(1e-300) + 8.0 * DD_EPS };
    let ln2 = Approx { value: Dd::LN2, err: DD_EPS };
    let count = exact_u64(p.count);

    let sum_log = positive_sum(&p.sum_log, 2.0);
    let sum_inv = positive_sum(&p.sum_inv, 1.0);
    let sum_log_over_p = positive_sum(&p.sum_log_over_p, 3.0);
    let sum_inv_logp1 = positive_sum(&p.sum_inv_logp1, 4.0);
    let sum_p_log = positive_sum(&p.sum_p_log, 3.0);
    let pp_log = positive_sum(&q.sum_log, 2.0);
    let pp_pm_log = positive_sum(&q.sum_pm_log, 3.0);
    let pp_log_over_pm = positive_sum(&q.sum_log_over_pm, 3.0);
    let pp_inv_m = positive_sum(&q.sum_inv_m, 1.0);
    let pp_pm_over_m = positive_sum(&q.sum_pm_over_m, 2.0);

    // integral of pi over [2, x] = sum (x - p)
    let int_pi = count.mul(xd).sub(Approx::exact(Dd::from_u128(p.sum_p)));
    let int_li = if x > 2.0 { int_li_approx(2.0, x)? } else { Approx::exact(Dd::ZERO) };
    let int_pi_minus_li = int_pi.sub(int_li);

    let int_pi_t2 = sum_inv.sub(count.div_f64(x));
    let int_li_t2 = if x > 2.0 { int_li_over_t2_approx(2.0, x)? } else { Approx::exact(Dd::ZERO) };
    let int_pi_minus_li_over_t2 = int_pi_t2.sub(int_li_t2);

    let lp1 = l.add(Approx::exact(Dd::ONE));
    let int_pi_log = sum_inv_logp1.sub(count.mul(lp1).div_f64(x));
    let int_li_log = if x > 2.0 { int_li_logt_over_t2_approx(2.0, x)? } else { Approx::exact(Dd::ZERO) };
    let int_pi_minus_li_logt_over_t2 = int_pi_log.sub(int_li_log);

    // integral of t over [2, x] = (x^2 - 4)/2
    let half_sq = xd.mul(xd).sub(Approx::exact(Dd::from_f64(4.0))).scale(0.5);
    let int_theta_minus_t = sum_log.mul(xd).sub(sum_p_log).sub(half_sq);
    let log_x_over_2 = l.sub(ln2);
    let int_theta_minus_t_over_t2 = sum_log_over_p.sub(sum_log.div_f64(x)).sub(log_x_over_2);

    let psi = sum_log.add(pp_log);
    let r1 = psi.mul(xd).sub(sum_p_log).sub(pp_pm_log).sub(half_sq);
    let int_psi_minus_t_over_t2 = sum_log_over_p.add(pp_log_over_pm).sub(psi.div_f64(x)).sub(log_x_over_2);

    // [2, 2] is empty: exact zeros rather than cancellation noise
    let (
        int_pi_minus_li,
        int_pi_minus_li_over_t2,
        int_pi_minus_li_logt_over_t2,
        int_theta_minus_t,
        int_theta_minus_t_over_t2,
        r1,
        int_psi_minus_t_over_t2,
    ) = if x == 2.0 {
        let z = Approx::exact(Dd::ZERO);
        (z, z, z, z, z, z, z)
    } else {
        (
            int_pi_minus_li,
            int_pi_minus_li_over_t2,
            int_pi_minus_li_logt_over_t2,
            int_theta_minus_t,
            int_theta_minus_t_over_t2,
            r1,
            int_psi_minus_t_over_t2,
        )
    };

    let a1 = sum_inv.sub(ll).sub(cs.approx("B")?);
    let a2 = sum_log_over_p.sub(l).sub(cs.approx("E")?);

    // Pi jumps by 1/m at p^m: integral of Pi = int_pi + sum (x - p^m)/m
    let int_pr = int_pi.add(pp_inv_m.mul(xd)).sub(pp_pm_over_m);
    let int_pi_riemann_minus_li = if x == 2.0 { Approx::exact(Dd::ZERO) } else { int_pr.sub(int_li) };

    let errors = IntegralErrors {
        int_pi_minus_li: int_pi_minus_li.f64_err(),
        int_pi_minus_li_over_t2: int_pi_minus_li_over_t2.f64_err(),
        int_pi_minus_li_logt_over_t2: int_pi_minus_li_logt_over_t2.f64_err(),
        int_theta_minus_t: int_theta_minus_t.f64_err(),
        int_theta_minus_t_over_t2: int_theta_minus_t_over_t2.f64_err(),
        r1: r1.f64_err(),
        int_psi_minus_t_over_t2: int_psi_minus_t_over_t2.f64_err(),
        a1: a1.f64_err(),
        a2: a2.f64_err(),
        int_pi_riemann_minus_li: int_pi_riemann_minus_li.f64_err(),
    };
    Ok(IntegralReport {
        x,
        pi: p.count,
        theta: sum_log.f64(),
        psi: psi.f64(),
        pi_riemann: p.count as f64 + pp_inv_m.f64(),
        int_pi_minus_li: int_pi_minus_li.f64(),
        int_pi_minus_li_over_t2: int_pi_minus_li_over_t2.f64(),
        int_pi_minus_li_logt_over_t2: int_pi_minus_li_logt_over_t2.f64(),
        int_theta_minus_t: int_theta_minus_t.f64(),
        int_theta_minus_t_over_t2: int_theta_minus_t_over_t2.f64(),
        r1: r1.f64(),
        int_psi_minus_t_over_t2: int_psi_minus_t_over_t2.f64(),
        a1: a1.f64(),
        a2: a2.f64(),
        int_pi_riemann_minus_li: int_pi_riemann_minus_li.f64(),
        abs_error_budget: errors.max(),
        errors,
    })
}

/// One report per point from a single sieve pass.
pub fn evaluate(points: &[f64], cs: &ConstantSet, cfg: &SieveConfig) -> Result<Vec<IntegralReport>> {
    let sums = prefix_sums(points, cfg)?;
    sums.iter().map(|ps| report_from_prefix(ps, cs)).collect()
}

/// A1(x) = sum_{p <= x} 1/p - log log x - B, with its error bound.
#[allow(non_snake_case)]
pub fn A1(x: f64) -> Result<(f64, f64)> {
    let r = evaluate(&[x], ConstantSet::standard(), &SieveConfig::new(2, 3))?.remove(0);
    Ok((r.a1, r.errors.a1))
}

/// A2(x) = sum_{p <= x} log p / p - log x - E, with its error bound.
#[allow(non_snake_case)]
pub fn A2(x: f64) -> Result<(f64, f64)> {
    let r = evaluate(&[x], ConstantSet::standard(), &SieveConfig::new(2, 3))?.remove(0);
    Ok((r.a2, r.errors.a2))
}

pub const CSV_VERSION: &str = "primint-integrals v1";

pub const CSV_COLUMNS: [&str; 17] = [
    "x",
    "pi",
    "theta",
    "psi",
    "pi_riemann",
    "int_pi_minus_li",
    "int_pi_minus_li_over_t2",
    "int_pi_minus_li_logt_over_t2",
    "int_theta_minus_t",
    "int_theta_minus_t_over_t2",
    "r1",
    "int_psi_minus_t_over_t2",
    "a1",
    "a2",
    "int_pi_riemann_minus_li",
    "abs_error_budget",
    "version",
];

impl IntegralReport {
    pub fn csv_record(&self) -> Vec<String> {
        let f = |v: f64| format!("{v:.17e}");
        vec![
            f(self.x),
            self.pi.to_string(),
            f(self.theta),
            f(self.psi),
            f(self.pi_riemann),
            f(self.int_pi_minus_li),
            f(self.int_pi_minus_li_over_t2),
            f(self.int_pi_minus_li_logt_over_t2),
            f(self.int_theta_minus_t),
            f(self.int_theta_minus_t_over_t2),
            f(self.r1),
            f(self.int_psi_minus_t_over_t2),
            f(self.a1),
            f(self.a2),
            f(self.int_pi_riemann_minus_li),
            format!("{:.3e}", self.abs_error_budget),
            CSV_VERSION.to_string(),
        ]
    }
}

pub fn write_csv<W: Write>(out: W, reports: &[IntegralReport]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_COLUMNS)?;
    for r in reports {
        w.write_record(r.csv_record())?;
    }
    w.flush()?;
    Ok(())
}
