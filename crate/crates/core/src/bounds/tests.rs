use super::*;
use crate::logint::li;
use crate::zeta_zeros::ZeroTable;

fn cfg() -> SieveConfig {
    SieveConfig::new(2, 3).with_segment_bytes(1 << 14)
}

fn ctx() -> BoundContext {
    BoundContext::new(ConstantSet::standard(), None, None).unwrap()
}

fn check(id: &str, grid: &[f64]) -> Verification {
    verify_range(&spec(id).unwrap(), grid, ConstantSet::standard(), &ctx(), &cfg()).unwrap()
}

#[test]
fn ids_are_unique_and_resolvable() {
    let all = specs();
    let mut ids: Vec<&str> = all.iter().map(|s| s.id).collect();
    ids.sort();
    ids.dedup();
    assert_eq!(ids.len(), all.len());
    for s in &all {
        // every spec evaluates somewhere in range without error
        let x = if s.id.starts_with("nicolas") { 200.0 } else { 1e4 };
        let (lo, hi) = bounds_at(s, x, &ctx()).unwrap();
        match s.side {
            Side::Upper => assert!(hi.is_some(), "{}", s.id),
            Side::Lower => assert!(lo.is_some(), "{}", s.id),
            Side::Bracket => assert!(lo.is_some() && hi.is_some(), "{}", s.id),
        }
    }
}

#[test]
fn unknown_id_is_an_error() {
    assert!(matches!(spec("thm999.upper"), Err(Error::UnknownBound(_))));
}

#[test]
fn empty_grid_gives_empty_report() {
    let v = check("thm102.lower", &[]);
    assert!(v.reports.is_empty());
    assert_eq!(v.summary.checked, 0);
    assert!(v.summary.passed());
}

#[test]
fn unsorted_grid_is_rejected() {
    let r = verify_range(&spec("thm107.lower").unwrap(), &[10.0, 5.0], ConstantSet::standard(), &ctx(), &cfg());
    assert!(matches!(r, Err(Error::Unsorted { index: 1 })));
}

#[test]
fn nonpositive_delta_is_a_domain_error() {
    let k = Consts::from_set(ConstantSet::standard()).unwrap();
    assert!(matches!(h(100.0, 0.0), Err(Error::Domain { .. })));
    assert!(matches!(thm107_bounds(100.0, -0.01, &k), Err(Error::Domain { .. })));
    assert!(matches!(thm102_bounds(100.0, ctx().big_j(), 0.0), Err(Error::Domain { .. })));
}

#[test]
fn delta_must_dominate_the_zero_sum() {
    let zt = ZeroTable::bundled();
    let w = crate::zeta_zeros::omega_partial(&zt);
    assert!(BoundContext::new(ConstantSet::standard(), Some(0.5 * w), Some(&zt)).is_err());
    assert!(BoundContext::new(ConstantSet::standard(), None, Some(&zt)).is_ok());
}

#[test]
fn threshold_gating() {
    let s = spec("thm102.upper").unwrap();
    assert!(!s.asserted_at(288.0));
    assert!(s.asserted_at(289.0));
    assert!(!s.asserted_at(2e10));
    let m = spec("thm104.bracket").unwrap();
    assert!(!m.asserted_at(1e9));
    let n = spec("nicolas.lower").unwrap();
    assert!(!n.asserted_at(120.9));
    assert!(n.asserted_at(121.0));
    let v = check("cor103.upper", &[1e6, 1.4e8]);
    assert_eq!(v.summary.checked, 2);
    assert_eq!(v.summary.asserted, 1);
}

#[test]
fn pi_bracket_at_its_own_lower_limit_contains_zero() {
    let cs = ConstantSet::standard();
    let k = Consts::from_set(cs).unwrap();
    for y in [2.0, 100.0, 1000.0] {
        let a = Anchor::at(y, cs).unwrap();
        let (lo, hi) = prop203_bounds(y, &a, k.lambda0, &k).unwrap();
        assert!(lo < 0.0 && 0.0 < hi, "y = {y}: ({lo}, {hi})");
    }
}

#[test]
fn prop203_contains_the_integral() {
    let grid = [2.5, 10.0, 100.0, 1e3, 1e4, 1e5, 1e6];
    for id in ["prop203.lower", "prop203.upper"] {
        let v = check(id, &grid);
        assert_eq!(v.summary.asserted, grid.len() as u64);
        assert!(v.summary.passed(), "{:?}", v.summary);
    }
}

#[test]
fn prop203_from_a_later_lower_limit() {
    let cs = ConstantSet::standard();
    let ctx = ctx().with_y(1000.0, cs).unwrap();
    let mut s = spec("prop203.upper").unwrap();
    s.params.insert("y", 1000.0);
    let v = verify_range(&s, &[500.0, 1e4, 1e6], cs, &ctx, &cfg()).unwrap();
    assert_eq!(v.reports.len(), 2);
    assert!(v.summary.passed());
    // the integral over [1000, x] is the difference of the ones from 2
    let r = evaluate(&[1000.0, 1e6], cs, &cfg()).unwrap();
    let want = r[1].int_pi_riemann_minus_li - r[0].int_pi_riemann_minus_li;
    assert!((v.reports[1].lhs - want).abs() < 1e-9 * want.abs());
}

#[test]
fn thm102_contains_the_integral() {
    let lower = check("thm102.lower", &[2.0, 10.0, 100.0, 1e4, 1e6]);
    assert!(lower.summary.passed(), "{:?}", lower.summary);
    let upper = check("thm102.upper", &[289.0, 1e3, 1e5, 1e6]);
    assert_eq!(upper.summary.asserted, 4);
    assert!(upper.summary.passed(), "{:?}", upper.summary);
}

#[test]
fn thm102_upper_is_negative_for_large_x() {
    let (_, hi) = bounds_at(&spec("thm102.upper").unwrap(), 1e8, &ctx()).unwrap();
    assert!(hi.unwrap() < 0.0);
}

#[test]
fn j1_uses_the_subtracted_g_term() {
    let c = ctx();
    let k = c.consts;
    let lo = j_coefficients(c.anchor_two(), c.delta, &k).unwrap();
    let want = li(2f64.powf(1.5)).unwrap().value - g(2.0).unwrap() + lo.j1;
    assert_eq!(c.big_j().j1, want);
    // at x = 2 the lower bracket must sit below the vanishing integral
    let (l2, _) = thm102_bounds(2.0, c.big_j(), c.delta).unwrap();
    assert!(l2 < 0.0);
}

#[test]
fn lemma201_on_a_grid() {
    let grid: Vec<f64> = (0..25).map(|i| 2.0 * 10f64.powf(i as f64 * 0.25)).collect();
    let v = check("lemma201.bracket", &grid);
    assert_eq!(v.summary.asserted, grid.len() as u64);
    assert!(v.summary.passed(), "{:?}", v.summary);
}

#[test]
fn thm107_and_kor108() {
    let grid = [2.0, 10.0, 121.0, 1e3, 1e5, 1e6];
    assert!(check("thm107.lower", &grid).summary.passed());
    let up = check("thm107.upper", &grid);
    assert_eq!(up.summary.asserted, 4);
    assert!(up.summary.passed());
    let k = check("kor108.upper", &grid);
    assert_eq!(k.summary.asserted, 5);
    assert!(k.summary.passed());
}

#[test]
fn cor103_upper_at_its_threshold() {
    let v = check("cor103.upper", &[139_537_375.0, 1.4e8]);
    assert_eq!(v.summary.asserted, 2);
    assert!(v.summary.passed(), "{:?}", v.reports);
}

#[test]
fn lemma303_lower_at_two_by_hand() {
    let l = li(2.0).unwrap().value;
    let bound = -0.024965 * 2.0 / 2f64.ln().powi(4);
    let v = check("lemma303.lower", &[2.0]);
    let r = &v.reports[0];
    assert!((r.lhs - (l - 1.0)).abs() < 1e-15);
    assert!((r.bound - bound).abs() < 1e-15);
    assert!(r.pass && r.asserted);
}

#[test]
fn lemma303_lower_by_prime_jumps() {
    let s = verify_route(&spec("lemma303.lower").unwrap(), 200_000, &cfg()).unwrap();
    assert_eq!(s.checked, 17984);
    assert!(s.passed());
}

#[test]
fn nicolas_at_121_and_up_to_a_million() {
    // at 121 itself psi - theta already contains log 11; just below it is
    // 5 log 2 + 3 log 3 + log 5 + log 7 < 11
    let below = 5.0 * 2f64.ln() + 3.0 * 3f64.ln() + 5f64.ln() + 7f64.ln();
    assert!(below < 11.0 && below + 11f64.ln() > 11.0);
    let v = check("nicolas.lower", &[120.5, 121.0]);
    assert!(!v.reports[0].asserted && !v.reports[0].pass);
    assert!(v.reports[1].asserted && v.reports[1].pass);
    assert!((v.reports[1].lhs - (below + 11f64.ln())).abs() < 1e-13);
    let (lower, upper) = nicolas_check(1_000_000).unwrap();
    assert!(lower.passed() && upper.passed());
    assert!(lower.checked > 0 && upper.checked > lower.checked);
    let s = verify_route(&spec("nicolas.upper").unwrap(), 1_000_000, &cfg()).unwrap();
    assert_eq!(s.checked, upper.checked);
}

#[test]
fn psi_limit_between_the_bracket_midpoints() {
    let c = ctx();
    let p = c.limits["psi_limit"];
    assert!(-0.8894 < p && p < -0.8802);
    let g = ConstantSet::standard().value("gamma").unwrap();
    assert!((p - (-g - 1.0 + 2f64.ln())).abs() < 1e-15);
    assert!((p + 0.884068).abs() < 5e-7);
}

#[test]
fn convergence_toward_the_limits() {
    let grid = [1e4, 1e5, 1e6, 1e7];
    for id in ["thm104.bracket", "thm105.bracket", "thm109.bracket", "kor603.bracket"] {
        let c = convergence_check(id, &grid, ConstantSet::standard(), &cfg()).unwrap();
        assert!(c.passed(), "{id}");
        assert_eq!(c.monotone_expected, id != "kor603.bracket");
    }
}

#[test]
fn convergence_rejects_other_ids() {
    assert!(convergence_check("thm102.upper", &[1e4], ConstantSet::standard(), &cfg()).is_err());
}

#[test]
fn execution_modes_agree() {
    let grid = [10.0, 1e3, 1e5];
    let s = spec("thm107.lower").unwrap();
    let a =
        verify_range(&s, &grid, ConstantSet::standard(), &ctx(), &cfg().with_execution(crate::Execution::Sequential))
            .unwrap();
    let b = verify_range(&s, &grid, ConstantSet::standard(), &ctx(), &cfg()).unwrap();
    assert_eq!(a, b);
}
