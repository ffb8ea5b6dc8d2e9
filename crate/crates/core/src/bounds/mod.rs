//! Effective bounds for the prime-counting integrals, and their
//! verification against the exact integrals.
//!
//! Each bound is identified by a string id such as `thm102.upper`. A check
//! is asserted only at points between its validity threshold and the sieve
//! range; elsewhere it is evaluated and reported.

mod convergence;
mod formulas;

use std::collections::BTreeMap;

use crate::constants::ConstantSet;
use crate::error::{Error, Result};
use crate::logint::{g_bound_check, li};
use crate::primes::{prime_powers, SieveConfig, STRETCH_MAX};
use crate::stepintegrals::{evaluate, sign_sweep, IntegralReport, SignStat, SignSweep};
use crate::zeta_zeros::{omega_partial, ZeroTable};

pub use convergence::{convergence_check, normalized_ranges, ConvergenceCheck, ConvergencePoint, NormalizedRanges};
pub use formulas::{
    a1_bound, a2_bound, big_j, f1, f2, g, h, j_coefficients, lemma201_bounds, log_envelope, prop203_bounds,
    theta_mean_width, thm102_bounds, thm107_bounds, Anchor, BigJ, Consts, JCoefficients, S_UPPER,
};

/// Validity threshold shared by the Mertens-type brackets.
pub const MERTENS_THRESHOLD: f64 = 1_757_126_630_797.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantity {
    /// integral_2^x (pi - li)
    IntPiMinusLi,
    /// integral_y^x (Pi - li)
    IntPiRiemannMinusLi,
    /// integral_2^x (theta - t)
    IntThetaMinusT,
    /// integral_2^x (pi - li)/t^2
    IntPiMinusLiOverT2,
    /// integral_2^x (pi - li) log t / t^2
    IntPiMinusLiLogtOverT2,
    /// integral_2^x (theta - t)/t^2
    IntThetaMinusTOverT2,
    /// integral_2^x (psi - t)/t^2
    IntPsiMinusTOverT2,
    /// li(x) - pi(x)
    LiMinusPi,
    /// integral_2^x (psi - t)
    R1,
    /// |A1(x)|
    A1Abs,
    /// |A2(x)|
    A2Abs,
    /// psi(x) - theta(x)
    PsiMinusTheta,
    /// G(x) = (li(x) - x(log^3 x + log^2 x + 2 log x + 6)/log^4 x)/24
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// lhs < bound
    Upper,
    /// lhs > bound
    Lower,
    /// lower < lhs < upper
    Bracket,
}

/// How the check is swept beyond the requested grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Grid,
    /// the extremes sit at prime jumps: every prime up to the maximum is checked
    PrimeJumps,
    /// the extremes sit next to prime powers
    PrimePowers,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundSpec {
    pub id: &'static str,
    pub statement: &'static str,
    pub quantity: Quantity,
    pub side: Side,
    pub validity_threshold: f64,
    /// the check starts strictly above the threshold
    pub open: bool,
    pub rh_conditional: bool,
    pub route: Route,
    pub params: BTreeMap<&'static str, f64>,
}

impl BoundSpec {
    /// Whether the inequality is claimed at `x`, given the sieve range.
    pub fn asserted_at(&self, x: f64) -> bool {
        let above = if self.open { x > self.validity_threshold } else { x >= self.validity_threshold };
        above && x <= STRETCH_MAX as f64
    }
}

macro_rules! spec {
    ($id:expr, $st:expr, $q:ident, $side:ident, $thr:expr, $open:expr, $rh:expr, $route:ident $(, $k:expr => $v:expr)*) => {
        BoundSpec {
            id: $id,
            statement: $st,
            quantity: Quantity::$q,
            side: Side::$side,
            validity_threshold: $thr,
            open: $open,
            rh_conditional: $rh,
            route: Route::$route,
            params: BTreeMap::from([$(($k, $v)),*]),
        }
    };
}

/// Every bound the crate knows, in a stable order.
pub fn specs() -> Vec<BoundSpec> {
    let m = MERTENS_THRESHOLD;
    vec![
        spec!("prop101.negativity", "integral_2^x (pi - li) < 0", IntPiMinusLi, Upper, 2.0, true, true, PrimeJumps),
        spec!(
            "lemma501.negativity",
            "integral_2^x (theta - t) < 0",
            IntThetaMinusT,
            Upper,
            2.0,
            true,
            true,
            PrimeJumps
        ),
        spec!(
            "kor106.negativity",
            "integral_2^x (pi - li) log t / t^2 < 0",
            IntPiMinusLiLogtOverT2,
            Upper,
            2.0,
            true,
            false,
            PrimeJumps
        ),
        spec!("lemma201.bracket", "c1 - c0 x - d x^1.5 - x/(2(x^2-1)) <= R1(x) < c1 - c0 x + d x^1.5", R1, Bracket, 2.0, false, true, Grid, "delta" => f64::NAN),
        spec!("prop203.lower", "j1 + j0 x - h(x) < integral_y^x (Pi - li)", IntPiRiemannMinusLi, Lower, 2.0, false, true, Grid, "delta" => f64::NAN, "y" => 2.0),
        spec!("prop203.upper", "integral_y^x (Pi - li) < j3 + j2 x + h(x)", IntPiRiemannMinusLi, Upper, 2.0, false, true, Grid, "delta" => f64::NAN, "y" => 2.0),
        spec!("thm102.lower", "J1 + J0 x + f1(x) + g(x) < integral_2^x (pi - li)", IntPiMinusLi, Lower, 2.0, false, true, Grid, "delta" => f64::NAN, "s" => S_UPPER),
        spec!("thm102.upper", "integral_2^x (pi - li) < J3 + J2 x + f2(x)", IntPiMinusLi, Upper, S_UPPER, false, true, Grid, "delta" => f64::NAN, "s" => S_UPPER),
        spec!(
            "cor103.lower",
            "-x^1.5/log x < integral_2^x (pi - li)",
            IntPiMinusLi,
            Lower,
            2_258_093_575.0,
            false,
            true,
            Grid
        ),
        spec!(
            "cor103.upper",
            "integral_2^x (pi - li) < (lambda0 - 2/3) x^1.5/log x",
            IntPiMinusLi,
            Upper,
            139_537_375.0,
            false,
            true,
            Grid
        ),
        spec!(
            "stechkin.lower",
            "-0.714 x^1.5/log x < integral_2^x (pi - li)",
            IntPiMinusLi,
            Lower,
            f64::INFINITY,
            false,
            true,
            Grid
        ),
        spec!(
            "stechkin.upper",
            "integral_2^x (pi - li) < -0.62 x^1.5/log x",
            IntPiMinusLi,
            Upper,
            f64::INFINITY,
            false,
            true,
            Grid
        ),
        spec!(
            "cor205.bracket",
            "|integral_2^x (Pi - li)| < 0.05 x^1.5/log x",
            IntPiRiemannMinusLi,
            Bracket,
            1.15e16,
            false,
            true,
            Grid
        ),
        spec!(
            "thm104.bracket",
            "C - 0.0100757/log^3 x < integral_2^x (pi - li)/t^2 < C + 0.0101517/log^3 x",
            IntPiMinusLiOverT2,
            Bracket,
            m,
            false,
            false,
            Grid
        ),
        spec!(
            "thm105.bracket",
            "K - 0.014262/log^2 x < integral_2^x (pi - li) log t/t^2 < K + 0.014352/log^2 x",
            IntPiMinusLiLogtOverT2,
            Bracket,
            m,
            false,
            false,
            Grid
        ),
        spec!(
            "thm109.bracket",
            "|integral_2^x (theta - t)/t^2 - D| < 0.024334/(2 log^2 x)(1 + 4/log x)",
            IntThetaMinusTOverT2,
            Bracket,
            m,
            false,
            false,
            Grid
        ),
        spec!(
            "kor603.bracket",
            "-0.8894 - w(x) < integral_2^x (psi - t)/t^2 < -0.8802 + w(x)",
            IntPsiMinusTOverT2,
            Bracket,
            m,
            false,
            false,
            Grid
        ),
        spec!("lemma301", "|A1(x)| <= 0.024334/(3 log^3 x)(1 + 15/(4 log x))", A1Abs, Upper, m, false, false, Grid),
        spec!("lemma401", "|A2(x)| <= 0.024334/(2 log^2 x)(1 + 2/log x)", A2Abs, Upper, m, false, false, Grid),
        spec!("lemma303.lower", "li(x) - pi(x) > -0.024965 x/log^4 x", LiMinusPi, Lower, 2.0, false, false, PrimeJumps),
        spec!("lemma303.upper", "li(x) - pi(x) < 0.02711 x/log^4 x", LiMinusPi, Upper, m, false, false, Grid),
        spec!("lemma303.g", "G(x) <= 1.1331 x/log^5 x", G, Upper, 1e19, false, false, Grid),
        spec!("thm107.lower", "-(w + 2/3) x^1.5 - x^(4/3) - x log 2pi < integral_2^x (theta - t)", IntThetaMinusT, Lower, 2.0, false, true, Grid, "delta" => f64::NAN),
        spec!("thm107.upper", "integral_2^x (theta - t) < (w - 2/3) x^1.5 - x log 2pi", IntThetaMinusT, Upper, 121.0, false, true, Grid, "delta" => f64::NAN),
        spec!(
            "kor108.lower",
            "-0.713 x^1.5 < integral_2^x (theta - t)",
            IntThetaMinusT,
            Lower,
            1.224117e23,
            false,
            true,
            Grid
        ),
        spec!(
            "kor108.upper",
            "integral_2^x (theta - t) < (lambda0 - 2/3) x^1.5",
            IntThetaMinusT,
            Upper,
            10.0,
            false,
            true,
            Grid
        ),
        spec!("nicolas.lower", "psi(t) - theta(t) > sqrt t", PsiMinusTheta, Lower, 121.0, false, false, PrimePowers),
        spec!(
            "nicolas.upper",
            "psi(t) - theta(t) < sqrt t + (4/3) t^(1/3)",
            PsiMinusTheta,
            Upper,
            1.0,
            false,
            false,
            PrimePowers
        ),
    ]
}

pub fn spec(id: &str) -> Result<BoundSpec> {
    specs().into_iter().find(|s| s.id == id).ok_or_else(|| Error::UnknownBound(id.to_string()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub id: &'static str,
    pub x: f64,
    pub lhs: f64,
    /// the bound on the asserted side; for brackets the nearer end
    pub bound: f64,
    /// distance to the bound in the asserted direction
    pub margin: f64,
    pub error_budget: f64,
    pub asserted: bool,
    /// margin exceeds the error budget
    pub pass: bool,
    pub rh_assumed: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifySummary {
    pub id: &'static str,
    pub checked: u64,
    pub asserted: u64,
    pub failures: u64,
    pub first_failure: Option<f64>,
    pub min_margin: f64,
    pub min_margin_at: f64,
    pub rh_assumed: bool,
}

impl VerifySummary {
    fn new(spec: &BoundSpec) -> VerifySummary {
        VerifySummary {
            id: spec.id,
            checked: 0,
            asserted: 0,
            failures: 0,
            first_failure: None,
            min_margin: f64::INFINITY,
            min_margin_at: f64::NAN,
            rh_assumed: spec.rh_conditional,
        }
    }

    fn add_report(&mut self, r: &BoundReport) {
        self.checked += 1;
        if r.asserted {
            self.asserted += 1;
            if !r.pass {
                self.failures += 1;
                self.first_failure.get_or_insert(r.x);
            }
            if r.margin < self.min_margin {
                self.min_margin = r.margin;
                self.min_margin_at = r.x;
            }
        }
    }

    /// Summary of a sweep over every jump point.
    pub fn from_stat(spec: &BoundSpec, s: &SignStat) -> VerifySummary {
        let mut v = VerifySummary::new(spec);
        v.add_stat(s);
        v
    }

    fn add_stat(&mut self, s: &SignStat) {
        self.checked += s.checked;
        self.asserted += s.checked;
        self.failures += s.failures;
        if self.first_failure.is_none() {
            self.first_failure = s.first_failure.map(|p| p as f64);
        }
        if s.min_margin < self.min_margin {
            self.min_margin = s.min_margin;
            self.min_margin_at = s.min_at as f64;
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verification {
    pub reports: Vec<BoundReport>,
    pub summary: VerifySummary,
}

/// Inputs shared by all evaluations in one run.
#[derive(Clone, Debug)]
pub struct BoundContext {
    pub consts: Consts,
    pub delta: f64,
    pub limits: BTreeMap<&'static str, f64>,
    two: Anchor,
    s: Anchor,
    /// lower limit for brackets over [y, x]
    y: Anchor,
    big_j: BigJ,
}

impl BoundContext {
    /// `delta` must dominate omega; it defaults to lambda0 when `None`. With
    /// a zero table, `delta` is also checked against the partial sum.
    pub fn new(cs: &ConstantSet, delta: Option<f64>, zt: Option<&ZeroTable>) -> Result<BoundContext> {
        let consts = Consts::from_set(cs)?;
        let delta = delta.unwrap_or(consts.lambda0);
        if let Some(zt) = zt {
            let w = omega_partial(zt);
            if delta < w {
                return Err(crate::error::domain("delta below the partial sum over zeros", delta));
            }
        }
        let two = Anchor::at(2.0, cs)?;
        let s = Anchor::at(S_UPPER, cs)?;
        let big_j = big_j(&two, &s, delta, &consts)?;
        let limits = BTreeMap::from([
            ("C", cs.value("C")?),
            ("K", cs.value("K")?),
            ("D", cs.value("D")?),
            ("psi_limit", cs.value("psi_limit")?),
        ]);
        Ok(BoundContext { consts, delta, limits, two, s, y: two, big_j })
    }

    /// Uses `y` as the lower limit of the Pi brackets.
    pub fn with_y(mut self, y: f64, cs: &ConstantSet) -> Result<BoundContext> {
        self.y = Anchor::at(y, cs)?;
        Ok(self)
    }

    pub fn anchor_two(&self) -> &Anchor {
        &self.two
    }

    pub fn anchor_s(&self) -> &Anchor {
        &self.s
    }

    pub fn big_j(&self) -> &BigJ {
        &self.big_j
    }
}

fn lhs_of(q: Quantity, r: &IntegralReport, y_part: Option<&IntegralReport>) -> Result<(f64, f64)> {
    let e = &r.errors;
    Ok(match q {
        Quantity::IntPiMinusLi => (r.int_pi_minus_li, e.int_pi_minus_li),
        Quantity::IntPiRiemannMinusLi => {
            let (v0, e0) = y_part.map_or((0.0, 0.0), |y| (y.int_pi_riemann_minus_li, y.errors.int_pi_riemann_minus_li));
            (r.int_pi_riemann_minus_li - v0, e.int_pi_riemann_minus_li + e0)
        }
        Quantity::IntThetaMinusT => (r.int_theta_minus_t, e.int_theta_minus_t),
        Quantity::IntPiMinusLiOverT2 => (r.int_pi_minus_li_over_t2, e.int_pi_minus_li_over_t2),
        Quantity::IntPiMinusLiLogtOverT2 => (r.int_pi_minus_li_logt_over_t2, e.int_pi_minus_li_logt_over_t2),
        Quantity::IntThetaMinusTOverT2 => (r.int_theta_minus_t_over_t2, e.int_theta_minus_t_over_t2),
        Quantity::IntPsiMinusTOverT2 => (r.int_psi_minus_t_over_t2, e.int_psi_minus_t_over_t2),
        Quantity::LiMinusPi => {
            let l = li(r.x)?;
            (l.value - r.pi as f64, l.abs_error + 1e-16 * l.value)
        }
        Quantity::R1 => (r.r1, e.r1),
        Quantity::A1Abs => (r.a1.abs(), e.a1),
        Quantity::A2Abs => (r.a2.abs(), e.a2),
        Quantity::PsiMinusTheta => (r.psi - r.theta, 4.0 * f64::EPSILON * r.psi),
        Quantity::G => {
            let g = crate::logint::g_function_approx(r.x)?;
            (g.f64(), g.f64_err())
        }
    })
}

/// (lower, upper) of the bound for `spec` at `x`; missing sides are None.
pub fn bounds_at(spec: &BoundSpec, x: f64, ctx: &BoundContext) -> Result<(Option<f64>, Option<f64>)> {
    let k = &ctx.consts;
    let d = ctx.delta;
    let l = x.ln();
    let both = |p: (f64, f64)| (Some(p.0), Some(p.1));
    Ok(match spec.id {
        "prop101.negativity" | "lemma501.negativity" | "kor106.negativity" => (None, Some(0.0)),
        "lemma201.bracket" => both(lemma201_bounds(x, d, k)),
        "prop203.lower" | "prop203.upper" => {
            let y = spec.params["y"];
            let a = if y == ctx.y.y { ctx.y } else { Anchor::at(y, ConstantSet::standard())? };
            both(prop203_bounds(x, &a, d, k)?)
        }
        "thm102.lower" | "thm102.upper" => both(thm102_bounds(x, &ctx.big_j, d)?),
        "cor103.lower" | "cor103.upper" => both(log_envelope(x, -1.0, k.lambda0 - 2.0 / 3.0)),
        "stechkin.lower" | "stechkin.upper" => both(log_envelope(x, -0.714, -0.62)),
        "cor205.bracket" => both(log_envelope(x, -0.05, 0.05)),
        "thm104.bracket" => {
            let c = ctx.limits["C"];
            (Some(c - 0.0100757 / l.powi(3)), Some(c + 0.0101517 / l.powi(3)))
        }
        "thm105.bracket" => {
            let kk = ctx.limits["K"];
            (Some(kk - 0.014262 / (l * l)), Some(kk + 0.014352 / (l * l)))
        }
        "thm109.bracket" => {
            let dd = ctx.limits["D"];
            let w = theta_mean_width(x);
            (Some(dd - w), Some(dd + w))
        }
        "kor603.bracket" => {
            let w = theta_mean_width(x);
            (Some(-0.8894 - w), Some(-0.8802 + w))
        }
        "lemma301" => (None, Some(a1_bound(x))),
        "lemma401" => (None, Some(a2_bound(x))),
        "lemma303.lower" => (Some(-0.024965 * x / l.powi(4)), None),
        "lemma303.upper" => (None, Some(0.02711 * x / l.powi(4))),
        "lemma303.g" => (None, Some(g_bound_check(x)?.1)),
        "thm107.lower" | "thm107.upper" => both(thm107_bounds(x, d, k)?),
        "kor108.lower" | "kor108.upper" => (Some(-0.713 * x.powf(1.5)), Some((k.lambda0 - 2.0 / 3.0) * x.powf(1.5))),
        "nicolas.lower" | "nicolas.upper" => (Some(x.sqrt()), Some(x.sqrt() + 4.0 / 3.0 * x.cbrt())),
        other => return Err(Error::UnknownBound(other.to_string())),
    })
}

/// Size of the terms that enter the bound, for its rounding budget.
fn bound_scale(q: Quantity, x: f64) -> f64 {
    match q {
        Quantity::IntPiMinusLi | Quantity::IntPiRiemannMinusLi | Quantity::IntThetaMinusT | Quantity::R1 => x.powf(1.5),
        Quantity::LiMinusPi | Quantity::G => x,
        Quantity::PsiMinusTheta => x.sqrt(),
        _ => 1.0,
    }
}

fn report(spec: &BoundSpec, x: f64, lhs: f64, lhs_err: f64, lo: Option<f64>, hi: Option<f64>) -> BoundReport {
    let up = |b: f64| (b, b - lhs);
    let down = |b: f64| (b, lhs - b);
    let (bound, margin) = match spec.side {
        Side::Upper => up(hi.expect("upper bound")),
        Side::Lower => down(lo.expect("lower bound")),
        Side::Bracket => {
            let a = down(lo.expect("lower bound"));
            let b = up(hi.expect("upper bound"));
            if a.1 <= b.1 {
                a
            } else {
                b
            }
        }
    };
    let error_budget = lhs_err + 1e-12 * (bound.abs() + bound_scale(spec.quantity, x));
    BoundReport {
        id: spec.id,
        x,
        lhs,
        bound,
        margin,
        error_budget,
        asserted: spec.asserted_at(x),
        pass: margin > error_budget,
        rh_assumed: spec.rh_conditional,
    }
}

fn check_grid(grid: &[f64]) -> Result<()> {
    for (i, w) in grid.windows(2).enumerate() {
        if !(w[0] < w[1]) {
            return Err(Error::Unsorted { index: i + 1 });
        }
    }
    Ok(())
}

/// Evaluates `spec` at every grid point from one sieve pass. Grid points
/// below 2 (or below y for brackets over [y, x]) are skipped.
pub fn verify_range(
    spec: &BoundSpec,
    grid: &[f64],
    cs: &ConstantSet,
    ctx: &BoundContext,
    cfg: &SieveConfig,
) -> Result<Verification> {
    check_grid(grid)?;
    let y = lower_limit(spec);
    let points: Vec<f64> = grid.iter().copied().filter(|&x| x >= y).collect();
    if points.is_empty() {
        return Ok(Verification { reports: Vec::new(), summary: VerifySummary::new(spec) });
    }
    let mut all = points.clone();
    if needs_lower_report(spec) {
        all.insert(0, y);
        all.dedup();
    }
    let reports = evaluate(&all, cs, cfg)?;
    let y_report = needs_lower_report(spec).then(|| reports[0].clone());
    let items: Vec<IntegralReport> = reports.into_iter().filter(|r| points.contains(&r.x)).collect();
    verify_reports(spec, &items, y_report.as_ref(), ctx, cfg.execution)
}

/// Lower end of the range where `spec` can be evaluated.
pub fn lower_limit(spec: &BoundSpec) -> f64 {
    spec.params.get("y").copied().unwrap_or(2.0).max(2.0)
}

/// Whether `spec` integrates over [y, x] with y > 2, so that the report at
/// y is needed as well.
pub fn needs_lower_report(spec: &BoundSpec) -> bool {
    lower_limit(spec) > 2.0 && spec.quantity == Quantity::IntPiRiemannMinusLi
}

/// Like [`verify_range`], on reports computed elsewhere. Reports below the
/// lower limit are skipped; `y_report` is the report at the lower limit
/// when [`needs_lower_report`] holds.
pub fn verify_reports(
    spec: &BoundSpec,
    reports: &[IntegralReport],
    y_report: Option<&IntegralReport>,
    ctx: &BoundContext,
    exec: crate::Execution,
) -> Result<Verification> {
    let y = lower_limit(spec);
    if needs_lower_report(spec) && y_report.map(|r| r.x) != Some(y) {
        return Err(crate::error::domain("report at the lower limit is missing", y));
    }
    let items: Vec<&IntegralReport> = reports.iter().filter(|r| r.x >= y).collect();
    let out = exec.try_map(&items, |r| -> Result<BoundReport> {
        let (lhs, err) = lhs_of(spec.quantity, r, y_report)?;
        let (lo, hi) = bounds_at(spec, r.x, ctx)?;
        Ok(report(spec, r.x, lhs, err, lo, hi))
    })?;
    let mut summary = VerifySummary::new(spec);
    for r in &out {
        summary.add_report(r);
    }
    Ok(Verification { reports: out, summary })
}

/// The statistic of a sign sweep that belongs to a prime-jump spec.
pub fn sweep_stat<'a>(spec: &BoundSpec, sweep: &'a SignSweep) -> Option<&'a SignStat> {
    match spec.id {
        "prop101.negativity" => Some(&sweep.pi_minus_li),
        "lemma501.negativity" => Some(&sweep.theta_minus_t),
        "kor106.negativity" => Some(&sweep.pi_minus_li_logt_over_t2),
        "lemma303.lower" => Some(&sweep.li_minus_pi_lower),
        _ => None,
    }
}

/// The statistic of a prime-power check that belongs to a Nicolas spec.
pub fn nicolas_stat<'a>(spec: &BoundSpec, stats: &'a (SignStat, SignStat)) -> &'a SignStat {
    if spec.side == Side::Lower {
        &stats.0
    } else {
        &stats.1
    }
}

/// Runs the sweep that goes with the bound's route, up to `max`.
pub fn verify_route(spec: &BoundSpec, max: u64, cfg: &SieveConfig) -> Result<VerifySummary> {
    Ok(match spec.route {
        Route::Grid => VerifySummary::new(spec),
        Route::PrimeJumps => {
            let sweep = sign_sweep(max, cfg)?;
            VerifySummary::from_stat(
                spec,
                sweep_stat(spec, &sweep).ok_or_else(|| Error::UnknownBound(spec.id.to_string()))?,
            )
        }
        Route::PrimePowers => VerifySummary::from_stat(spec, nicolas_stat(spec, &nicolas_check(max)?)),
    })
}

/// psi - theta against sqrt t (for t >= 121) and sqrt t + (4/3) t^{1/3} at
/// every prime power up to `max`. Between prime powers psi - theta is
/// constant, so the lower inequality is tightest just before the next prime
/// power and the upper one right at each prime power.
pub fn nicolas_check(max: u64) -> Result<(SignStat, SignStat)> {
    let mut lower = SignStat::new("psi - theta > sqrt t");
    let mut upper = SignStat::new("psi - theta < sqrt t + 4/3 t^(1/3)");
    let mut diff = crate::compensated::CompensatedSum::ZERO;
    let powers = prime_powers(max);
    let budget = |v: f64| 8.0 * f64::EPSILON * v;
    for (i, q) in powers.iter().enumerate() {
        let t = q.value as f64;
        // left limit at t: sum over earlier prime powers
        let before = diff.value();
        if t > 121.0 {
            lower.record(q.value, before - t.sqrt(), budget(t.sqrt()));
        }
        diff.add((q.prime as f64).ln());
        let v = diff.value();
        upper.record(q.value, t.sqrt() + 4.0 / 3.0 * t.cbrt() - v, budget(t.sqrt()));
        // the stretch after the last prime power runs to max
        if i + 1 == powers.len() && max as f64 > t {
            let end = max as f64;
            lower.record(max, v - end.sqrt(), budget(end.sqrt()));
        }
    }
    Ok((lower, upper))
}

#[cfg(test)]
mod tests;
