//! Sign checks at every prime up to a limit. The integrals are monotone
//! between jumps, so their extremes on [2, max] occur at primes.

use crate::dd::{Dd, DD_EPS};
use crate::error::Result;
use crate::logint::{antideriv_li, antideriv_li_logt_over_t2, li_f64};
use crate::primes::{map_segments, PrimeAccumulator, SieveConfig, Span};

const F64_EPS: f64 = f64::EPSILON / 2.0;

/// Lower constant in li(x) - pi(x) > -c x / log^4 x.
pub const LI_MINUS_PI_LOWER: f64 = 0.024965;

/// Running minimum of `margin - budget` over the checked primes.
#[derive(Clone, Debug, PartialEq)]
pub struct SignStat {
    pub name: &'static str,
    pub checked: u64,
    pub failures: u64,
    pub first_failure: Option<u64>,
    /// smallest margin seen and where
    pub min_margin: f64,
    pub min_at: u64,
    /// smallest margin relative to its error budget
    pub min_margin_over_budget: f64,
}

impl SignStat {
    pub(crate) fn new(name: &'static str) -> SignStat {
        SignStat {
            name,
            checked: 0,
            failures: 0,
            first_failure: None,
            min_margin: f64::INFINITY,
            min_at: 0,
            min_margin_over_budget: f64::INFINITY,
        }
    }

    pub(crate) fn record(&mut self, p: u64, margin: f64, budget: f64) {
        self.checked += 1;
        if !(margin > budget) {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(p);
            }
        }
        if margin < self.min_margin {
            self.min_margin = margin;
            self.min_at = p;
        }
        let ratio = margin / budget.max(f64::MIN_POSITIVE);
        if ratio < self.min_margin_over_budget {
            self.min_margin_over_budget = ratio;
        }
    }

    fn merge(&mut self, o: &SignStat) {
        self.checked += o.checked;
        self.failures += o.failures;
        if self.first_failure.is_none() {
            self.first_failure = o.first_failure;
        }
        if o.min_margin < self.min_margin {
            self.min_margin = o.min_margin;
            self.min_at = o.min_at;
        }
        self.min_margin_over_budget = self.min_margin_over_budget.min(o.min_margin_over_budget);
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SignSweep {
    pub max: u64,
    /// integral of pi - li is negative
    pub pi_minus_li: SignStat,
    /// integral of theta - t is negative
    pub theta_minus_t: SignStat,
    /// integral of (pi - li) log t / t^2 is negative
    pub pi_minus_li_logt_over_t2: SignStat,
    /// li(x) - pi(x) > -0.024965 x / log^4 x
    pub li_minus_pi_lower: SignStat,
}

impl SignSweep {
    pub fn stats(&self) -> [&SignStat; 4] {
        [&self.pi_minus_li, &self.theta_minus_t, &self.pi_minus_li_logt_over_t2, &self.li_minus_pi_lower]
    }

    fn empty(max: u64) -> SignSweep {
        SignSweep {
            max,
            pi_minus_li: SignStat::new("integral of pi - li < 0"),
            theta_minus_t: SignStat::new("integral of theta - t < 0"),
            pi_minus_li_logt_over_t2: SignStat::new("integral of (pi - li) log t / t^2 < 0"),
            li_minus_pi_lower: SignStat::new("li - pi > -0.024965 x / log^4 x"),
        }
    }

    fn merge(&mut self, o: &SignSweep) {
        self.pi_minus_li.merge(&o.pi_minus_li);
        self.theta_minus_t.merge(&o.theta_minus_t);
        self.pi_minus_li_logt_over_t2.merge(&o.pi_minus_li_logt_over_t2);
        self.li_minus_pi_lower.merge(&o.li_minus_pi_lower);
    }
}

/// Values of the smooth antiderivatives at the lower limit 2.
struct Base {
    int_li: f64,
    int_li_logt: f64,
    err: f64,
}

impl Base {
    fn new() -> Result<Base> {
        let a = antideriv_li(2.0)?;
        let b = antideriv_li_logt_over_t2(2.0)?;
        Ok(Base { int_li: a.f64(), int_li_logt: b.f64(), err: a.f64_err() + b.f64_err() })
    }
}

// Plain binary64 with explicit bounds: the margins exceed the budgets by
// ten orders of magnitude, and double-double li would dominate the run time.
fn evaluate_at(acc: &PrimeAccumulator, p: u64, base: &Base, out: &mut SignSweep) -> Result<()> {
    let x = p as f64;
    let n = acc.count as f64;
    let lix = li_f64(x)?;
    let l = x.ln();
    if p > 2 {
        let int_pi = (Dd::from_u64(acc.count) * Dd::from_f64(x) - Dd::from_u128(acc.sum_p)).to_f64();
        let lix2 = li_f64(x * x)?;
        let int_li = x * lix.value - lix2.value - base.int_li;
        let v = int_pi - int_li;
        let err = x * lix.abs_error
            + lix2.abs_error
            + base.err
            + 4.0 * F64_EPS * (int_pi.abs() + x * lix.value + lix2.value + base.int_li.abs());
        out.pi_minus_li.record(p, -v, err);

        let xd = Dd::from_f64(x);
        let sum_log = acc.sum_log.dd();
        let sum_p_log = acc.sum_p_log.dd();
        let half_sq = (xd.sqr() - Dd::from_f64(4.0)).scale(0.5);
        let v = sum_log * xd - sum_p_log - half_sq;
        let err = 5.0 * F64_EPS * (sum_log.hi * x + sum_p_log.hi) + 8.0 * DD_EPS * half_sq.hi;
        out.theta_minus_t.record(p, -v.to_f64(), err + v.hi.abs() * F64_EPS);

        let s = acc.sum_inv_logp1.value();
        let step = s - n * (l + 1.0) / x;
        let anti = l + l.ln() - (l + 1.0) * lix.value / x - base.int_li_logt;
        let v = step - anti;
        let err = base.err
            + (l + 1.0) * lix.abs_error / x
            + 8.0 * F64_EPS * (s + n * (l + 1.0) / x + l + l.ln().abs() + (l + 1.0) * lix.value / x)
            + 4.0 * F64_EPS * l * (1.0 + (n + lix.value) / x);
        out.pi_minus_li_logt_over_t2.record(p, -v, err);
    }
    let slack = LI_MINUS_PI_LOWER * x / l.powi(4);
    let margin = lix.value - n + slack;
    let budget = lix.abs_error + 8.0 * F64_EPS * (lix.value + n + slack);
    out.li_minus_pi_lower.record(p, margin, budget);
    Ok(())
}

/// Checks the four sign properties at every prime `p <= max`.
pub fn sign_sweep(max: u64, cfg: &SieveConfig) -> Result<SignSweep> {
    let cfg = cfg.clone().with_range(2, max + 1);
    let parts = map_segments(&cfg, |(a, b), ps| PrimeAccumulator::from_primes(Span::new(a, b), ps))?;
    let mut starts = Vec::with_capacity(parts.len());
    let mut running = PrimeAccumulator::empty(Span::new(2, 2));
    for part in &parts {
        starts.push(running.clone());
        running = running.merge(part)?;
    }
    let base = Base::new()?;
    let results = map_segments(&cfg, |(a, _), ps| -> Result<SignSweep> {
        let k = starts.partition_point(|s| s.span.hi < a);
        let mut acc = starts[k.min(starts.len() - 1)].clone();
        debug_assert_eq!(acc.span.hi, a);
        let mut out = SignSweep::empty(max);
        for &p in ps {
            // extend the running prefix through p
            let step = PrimeAccumulator::from_primes(Span::new(acc.span.hi, p + 1), &[p]);
            acc = acc.merge(&step)?;
            evaluate_at(&acc, p, &base, &mut out)?;
        }
        Ok(out)
    })?;
    let mut total = SignSweep::empty(max);
    for r in results {
        total.merge(&r?);
    }
    Ok(total)
}
