//! The subcommands. Each returns a table for standard output and whether
//! every asserted check passed.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::path::PathBuf;
use std::time::Instant;

use primint::bounds::{
    bounds_at, convergence_check, lemma201_bounds, needs_lower_report, nicolas_check, nicolas_stat, specs, sweep_stat,
    verify_reports, BoundContext, BoundSpec, Route, VerifySummary,
};
use primint::constants::ConstantSet;
use primint::primes::{prefix_sums, read_checkpoints, write_checkpoints, PrefixSums, SieveConfig};
use primint::stepintegrals::{
    check_identities, report_from_prefix, sign_sweep, IdentityId, IntegralReport, CSV_COLUMNS, CSV_VERSION,
};
use primint::zeta_zeros::{
    default_large_table, explicit_formula, load_zeros, omega_partial, omega_tail, re_rho_sum_limit, re_rho_sum_partial,
    re_rho_tail, ZeroTable,
};

use crate::config::Settings;
use crate::error::CliError;
use crate::table::{Cell, Table};

pub struct Outcome {
    pub table: Table,
    pub passed: bool,
}

impl Outcome {
    fn ok(table: Table) -> Outcome {
        Outcome { table, passed: true }
    }
}

/// Progress lines on standard error.
pub struct Progress {
    quiet: bool,
    start: Instant,
}

impl Progress {
    pub fn new(quiet: bool) -> Progress {
        Progress { quiet, start: Instant::now() }
    }

    pub fn note(&self, msg: impl AsRef<str>) {
        if !self.quiet {
            eprintln!("[{:7.1}s] {}", self.start.elapsed().as_secs_f64(), msg.as_ref());
        }
    }
}

fn sieve(s: &Settings) -> SieveConfig {
    SieveConfig::new(2, 3).with_max(s.max_x)
}

pub fn constants() -> Outcome {
    let mut t = Table::new(&["name", "value", "abs_error", "method"]);
    for c in ConstantSet::standard().iter() {
        t.push(vec![
            c.name.as_str().into(),
            format!("{:.25}", c.value).into(),
            c.abs_error.into(),
            c.method.to_string().into(),
        ]);
    }
    Outcome::ok(t)
}

fn cache_path(points: &[f64], max_x: u64) -> Option<PathBuf> {
    let dir = std::env::var_os("PRIMINT_CACHE_DIR")?;
    let mut h = DefaultHasher::new();
    max_x.hash(&mut h);
    for x in points {
        x.to_bits().hash(&mut h);
    }
    Some(PathBuf::from(dir).join(format!("checkpoints-{:016x}.csv", h.finish())))
}

/// Prefix sums at `points`, through the checkpoint cache when
/// PRIMINT_CACHE_DIR is set. A cached file is used only if it holds exactly
/// the requested points.
fn checkpoints(points: &[f64], s: &Settings, p: &Progress) -> Result<Vec<PrefixSums>, CliError> {
    let path = cache_path(points, s.max_x);
    if let Some(path) = path.as_ref().filter(|p| p.exists()) {
        if let Ok(rows) = read_checkpoints(path) {
            if rows.iter().map(|r| r.x).eq(points.iter().copied()) {
                p.note(format!("using cached checkpoints {}", path.display()));
                return Ok(rows);
            }
        }
        p.note(format!("ignoring stale cache {}", path.display()));
    }
    p.note(format!("sieving to {:.3e} for {} points", points[points.len() - 1], points.len()));
    let rows = prefix_sums(points, &sieve(s))?;
    if let Some(path) = path {
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir).map_err(|e| CliError::Io { path: dir.to_path_buf(), source: e })?;
        }
        write_checkpoints(&path, &rows)?;
        p.note(format!("cached checkpoints in {}", path.display()));
    }
    Ok(rows)
}

fn reports(points: &[f64], s: &Settings, p: &Progress) -> Result<Vec<IntegralReport>, CliError> {
    let cs = ConstantSet::standard();
    checkpoints(points, s, p)?.iter().map(|ps| report_from_prefix(ps, cs).map_err(CliError::from)).collect()
}

pub fn integrals(s: &Settings, p: &Progress) -> Result<Outcome, CliError> {
    let points = s.points_or(&[2.0, 10.0, 100.0, 1e3, 1e4, 1e5, 1e6])?;
    let mut t = Table::new(&CSV_COLUMNS);
    for r in reports(&points, s, p)? {
        let mut row: Vec<Cell> = vec![r.x.into(), r.pi.into()];
        row.extend(
            [
                r.theta,
                r.psi,
                r.pi_riemann,
                r.int_pi_minus_li,
                r.int_pi_minus_li_over_t2,
                r.int_pi_minus_li_logt_over_t2,
                r.int_theta_minus_t,
                r.int_theta_minus_t_over_t2,
                r.r1,
                r.int_psi_minus_t_over_t2,
                r.a1,
                r.a2,
                r.int_pi_riemann_minus_li,
                r.abs_error_budget,
            ]
            .map(Cell::from),
        );
        row.push(CSV_VERSION.into());
        t.push(row);
    }
    Ok(Outcome::ok(t))
}

pub fn identities(s: &Settings, ids: Option<&str>, tolerance: f64, p: &Progress) -> Result<Outcome, CliError> {
    let ids: Vec<IdentityId> = match ids {
        None => IdentityId::ALL.to_vec(),
        Some(list) => list.split(',').map(|n| n.trim().parse()).collect::<Result<_, _>>()?,
    };
    let points = s.points_or(&[10.0, 100.0, 1e3, 1e4, 1e5, 1e6, 1e7])?;
    p.note(format!("checking {} identities at {} points", ids.len(), points.len()));
    let checks = check_identities(&ids, &points, ConstantSet::standard(), &sieve(s))?;
    let mut t = Table::new(&["id", "x", "lhs", "rhs", "residual", "pass"]);
    let mut passed = true;
    for c in checks {
        let ok = c.residual <= tolerance;
        passed &= ok;
        t.push(vec![c.id.as_str().into(), c.x.into(), c.lhs.into(), c.rhs.into(), c.residual.into(), ok.into()]);
    }
    Ok(Outcome { table: t, passed })
}

/// Geometric steps of 1.2 from the lower limit, plus the integers around
/// the validity threshold.
fn default_grid(spec: &BoundSpec, max_x: f64) -> Vec<f64> {
    let lo = primint::bounds::lower_limit(spec);
    let mut g = Vec::new();
    let mut x = lo;
    while x < max_x {
        g.push(x);
        x *= 1.2;
    }
    g.push(max_x);
    let thr = spec.validity_threshold;
    if thr.is_finite() && thr <= max_x {
        let base = thr.floor();
        g.extend((-2..=2).map(|k| base + k as f64).filter(|&v| v >= lo && v <= max_x));
    }
    g.sort_by(f64::total_cmp);
    g.dedup();
    g
}

const CONVERGENCE_IDS: [&str; 4] = ["thm104.bracket", "thm105.bracket", "thm109.bracket", "kor603.bracket"];

const SUMMARY_COLUMNS: [&str; 11] = [
    "id",
    "check",
    "checked",
    "asserted",
    "failures",
    "first_failure",
    "min_margin",
    "min_margin_at",
    "rh_assumed",
    "pass",
    "statement",
];

fn summary_row(spec: &BoundSpec, check: &str, v: &VerifySummary) -> Vec<Cell> {
    let finite = |x: f64| x.is_finite().then_some(x);
    vec![
        spec.id.into(),
        check.into(),
        v.checked.into(),
        v.asserted.into(),
        v.failures.into(),
        v.first_failure.into(),
        finite(v.min_margin).into(),
        finite(v.min_margin_at).into(),
        v.rh_assumed.into(),
        v.passed().into(),
        spec.statement.into(),
    ]
}

pub struct VerifyArgs<'a> {
    pub spec: &'a str,
    pub detail: bool,
}

pub fn verify(s: &Settings, args: &VerifyArgs, p: &Progress) -> Result<Outcome, CliError> {
    let cs = ConstantSet::standard();
    let chosen: Vec<BoundSpec> = if args.spec == "all" {
        specs()
    } else {
        args.spec.split(',').map(|id| primint::bounds::spec(id.trim())).collect::<Result<_, _>>()?
    };
    let zt = match &s.zeros {
        Some(path) => Some(load_zeros(path)?),
        None => None,
    };
    if let Some(zt) = &zt {
        p.note(format!(
            "{} zeros up to height {:.3}: omega partial sum {:.12}",
            zt.count(),
            zt.height(),
            omega_partial(zt)
        ));
    }
    let ctx = BoundContext::new(cs, s.delta, zt.as_ref())?;
    let max_x = s.max_x as f64;
    let exec = sieve(s).execution;

    // one sieve pass for every grid point of every spec
    let grids: Vec<Vec<f64>> = chosen
        .iter()
        .map(|sp| match &s.points {
            Some(pts) => pts.0.iter().copied().filter(|&x| x <= max_x).collect(),
            None => default_grid(sp, max_x),
        })
        .collect();
    let mut all: Vec<f64> = grids.iter().flatten().copied().filter(|&x| x >= 2.0).collect();
    all.extend(chosen.iter().filter(|sp| needs_lower_report(sp)).map(primint::bounds::lower_limit));
    all.sort_by(f64::total_cmp);
    all.dedup();
    let reports = if all.is_empty() { Vec::new() } else { reports(&all, s, p)? };
    let at = |x: f64| reports.iter().find(|r| r.x == x);

    let sweep = if chosen.iter().any(|sp| sp.route == Route::PrimeJumps) {
        p.note(format!("sign sweep over every prime up to {:.3e}", max_x));
        Some(sign_sweep(s.max_x, &sieve(s))?)
    } else {
        None
    };
    let nicolas = if chosen.iter().any(|sp| sp.route == Route::PrimePowers) {
        p.note(format!("prime powers up to {:.3e}", max_x));
        Some(nicolas_check(s.max_x)?)
    } else {
        None
    };

    let mut passed = true;
    let mut summary = Table::new(&SUMMARY_COLUMNS);
    let mut detail =
        Table::new(&["id", "x", "lhs", "bound", "margin", "error_budget", "asserted", "pass", "rh_assumed"]);
    for (sp, grid) in chosen.iter().zip(&grids) {
        let items: Vec<IntegralReport> = grid.iter().filter_map(|&x| at(x).cloned()).collect();
        let y_report = needs_lower_report(sp).then(|| at(primint::bounds::lower_limit(sp))).flatten();
        let v = verify_reports(sp, &items, y_report, &ctx, exec)?;
        passed &= v.summary.passed();
        summary.push(summary_row(sp, "grid", &v.summary));
        for r in &v.reports {
            detail.push(vec![
                r.id.into(),
                r.x.into(),
                r.lhs.into(),
                r.bound.into(),
                r.margin.into(),
                r.error_budget.into(),
                r.asserted.into(),
                r.pass.into(),
                r.rh_assumed.into(),
            ]);
        }
        let route = match sp.route {
            Route::Grid => None,
            Route::PrimeJumps => sweep.as_ref().and_then(|sw| sweep_stat(sp, sw)).map(|st| ("prime_jumps", st)),
            Route::PrimePowers => nicolas.as_ref().map(|n| ("prime_powers", nicolas_stat(sp, n))),
        };
        if let Some((name, stat)) = route {
            let v = VerifySummary::from_stat(sp, stat);
            passed &= v.passed();
            summary.push(summary_row(sp, name, &v));
        }
        if CONVERGENCE_IDS.contains(&sp.id) && max_x >= 1e5 {
            let decades = (max_x.log10() - 4.0).floor() as i32;
            let grid: Vec<f64> = (0..=2 * decades).map(|k| 10f64.powf(4.0 + 0.5 * k as f64)).collect();
            p.note(format!("{}: distance to the limit on {} points", sp.id, grid.len()));
            let c = convergence_check(sp.id, &grid, cs, &sieve(s))?;
            let ok = c.passed();
            passed &= ok;
            let last = c.points.last().expect("nonempty grid");
            summary.push(vec![
                sp.id.into(),
                "convergence".into(),
                c.points.len().into(),
                c.points.len().into(),
                u64::from(!ok).into(),
                Cell::Empty,
                (last.envelope - last.distance).into(),
                last.x.into(),
                false.into(),
                ok.into(),
                format!(
                    "|integral - {}| below {:.3e} at {:.0e}; monotone: {}{}",
                    c.limit_name,
                    last.envelope,
                    last.x,
                    c.monotone(),
                    if c.monotone_expected { "" } else { " (not required)" }
                )
                .into(),
            ]);
        }
    }
    Ok(Outcome { table: if args.detail { detail } else { summary }, passed })
}

fn zero_table(s: &Settings) -> Result<ZeroTable, CliError> {
    Ok(match s.zeros.clone().or_else(default_large_table) {
        Some(path) => load_zeros(path)?,
        None => ZeroTable::bundled(),
    })
}

pub struct ZerosArgs {
    pub count: Option<usize>,
    pub omega: bool,
    pub explicit_formula: bool,
}

pub fn zeros(s: &Settings, args: &ZerosArgs, p: &Progress) -> Result<Outcome, CliError> {
    let mut zt = zero_table(s)?;
    if let Some(n) = args.count {
        zt = zt.truncated(n)?;
    }
    p.note(format!("{} zeros from {}", zt.count(), zt.source));
    let cs = ConstantSet::standard();
    if args.explicit_formula {
        let points = s.points_or(&[1e3, 1e4, 1e5, 1e6])?;
        let rows = explicit_formula(&points, &zt, cs, &sieve(s))?;
        let mut t = Table::new(&["x", "lhs", "rhs", "residual", "residual_over_x32", "zeros_used", "rh_assumed"]);
        for r in rows {
            t.push(vec![
                r.x.into(),
                r.lhs.into(),
                r.rhs.into(),
                r.residual.into(),
                (r.residual / r.x.powf(1.5)).into(),
                r.zeros_used.into(),
                r.rh_assumed.into(),
            ]);
        }
        return Ok(Outcome::ok(t));
    }
    let lambda0 = cs.value("lambda0")?;
    let w = omega_partial(&zt);
    let wt = omega_tail(&zt);
    let rr = re_rho_sum_partial(&zt);
    let rt = re_rho_tail(&zt);
    let limit = re_rho_sum_limit(cs)?;
    let within = (limit - rr - rt.value).abs() <= rt.uncertainty;
    let mut t = Table::new(&["quantity", "value", "note"]);
    t.push(vec!["zeros".into(), zt.count().into(), zt.source.clone().into()]);
    t.push(vec!["height".into(), zt.height().into(), Cell::Empty]);
    t.push(vec!["omega_partial".into(), w.into(), format!("below lambda0: {}", w < lambda0).into()]);
    t.push(vec!["omega_tail".into(), wt.value.into(), format!("+- {:.3e}", wt.uncertainty).into()]);
    t.push(vec!["lambda0".into(), lambda0.into(), Cell::Empty]);
    if !args.omega {
        t.push(vec!["re_rho_sum_partial".into(), rr.into(), Cell::Empty]);
        t.push(vec!["re_rho_tail".into(), rt.value.into(), format!("+- {:.3e}", rt.uncertainty).into()]);
        t.push(vec![
            "re_rho_sum_limit".into(),
            limit.into(),
            format!("partial + tail within uncertainty: {within}").into(),
        ]);
    }
    Ok(Outcome { table: t, passed: w < lambda0 && (args.omega || within) })
}

/// Integrals next to their brackets, one row per point, for plotting.
pub fn export(s: &Settings, p: &Progress) -> Result<Outcome, CliError> {
    let cs = ConstantSet::standard();
    let points = s.points_or(&"ratio:2:1e8:1.1".parse::<crate::config::Points>().expect("valid grid").0)?;
    let ctx = BoundContext::new(cs, s.delta, None)?;
    let side = |id: &str, x: f64| -> Result<(Option<f64>, Option<f64>), CliError> {
        Ok(bounds_at(&primint::bounds::spec(id)?, x, &ctx)?)
    };
    let mut t = Table::new(&[
        "x",
        "int_pi_minus_li",
        "thm102_lower",
        "thm102_upper",
        "int_pi_riemann_minus_li",
        "prop203_lower",
        "prop203_upper",
        "int_theta_minus_t",
        "thm107_lower",
        "thm107_upper",
        "r1",
        "lemma201_lower",
        "lemma201_upper",
        "normalized_pi_riemann",
        "normalized_theta",
    ]);
    for r in reports(&points, s, p)? {
        let x = r.x;
        let x32 = x.powf(1.5);
        let (a, b) = side("thm102.lower", x)?;
        let (c, d) = side("prop203.lower", x)?;
        let (e, f) = side("thm107.lower", x)?;
        let (g, h) = lemma201_bounds(x, ctx.delta, &ctx.consts);
        t.push(vec![
            x.into(),
            r.int_pi_minus_li.into(),
            a.into(),
            b.into(),
            r.int_pi_riemann_minus_li.into(),
            c.into(),
            d.into(),
            r.int_theta_minus_t.into(),
            e.into(),
            f.into(),
            r.r1.into(),
            g.into(),
            h.into(),
            (x.ln() * r.int_pi_riemann_minus_li / x32).into(),
            (r.int_theta_minus_t / x32).into(),
        ]);
    }
    Ok(Outcome::ok(t))
}
