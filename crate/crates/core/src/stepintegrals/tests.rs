use super::*;
use crate::constants::ConstantSet;
use crate::logint::li;
use crate::primes::{small_primes, SieveConfig};
use crate::quad::adaptive;
use crate::Execution;

fn cfg() -> SieveConfig {
    SieveConfig::new(2, 3).with_segment_bytes(1 << 14)
}

fn li_f(t: f64) -> f64 {
    li(t).unwrap().value
}

/// Integral over [2, x] of a step function g(count, t) plus a smooth part,
/// integrated piece by piece between primes.
fn piecewise(x: f64, primes: &[u64], g: impl Fn(f64, f64) -> f64) -> f64 {
    let mut cuts: Vec<f64> = primes.iter().map(|&p| p as f64).filter(|&p| p < x).collect();
    cuts.push(x);
    let mut total = 0.0;
    for (k, w) in cuts.windows(2).enumerate() {
        let n = (k + 1) as f64;
        total += adaptive(|t| g(n, t), w[0], w[1], 1e-14, 1e-14).value;
    }
    total
}

#[test]
fn everything_vanishes_at_two() {
    let r = evaluate(&[2.0], ConstantSet::standard(), &cfg()).unwrap().remove(0);
    assert_eq!(r.pi, 1);
    assert!((r.theta - std::f64::consts::LN_2).abs() < 1e-16);
    for v in [
        r.int_pi_minus_li,
        r.int_pi_minus_li_over_t2,
        r.int_pi_minus_li_logt_over_t2,
        r.int_theta_minus_t,
        r.int_theta_minus_t_over_t2,
        r.r1,
        r.int_psi_minus_t_over_t2,
        r.int_pi_riemann_minus_li,
    ] {
        assert_eq!(v, 0.0);
    }
}

#[test]
fn step_integral_at_ten() {
    let r = evaluate(&[10.0], ConstantSet::standard(), &cfg()).unwrap().remove(0);
    // (10-2) + (10-3) + (10-5) + (10-7)
    let int_li = adaptive(li_f, 2.0, 10.0, 1e-15, 1e-15).value;
    assert!((r.int_pi_minus_li - (23.0 - int_li)).abs() < 1e-12);
    assert_eq!(r.pi, 4);
}

#[test]
fn integrals_match_piecewise_quadrature() {
    let primes = small_primes(20_000);
    let cs = ConstantSet::standard();
    for x in [1e4, 12_345.678] {
        let r = evaluate(&[x], cs, &cfg()).unwrap().remove(0);
        let theta_at = |n: f64| primes[..n as usize].iter().map(|&p| (p as f64).ln()).sum::<f64>();
        let cases = [
            (r.int_pi_minus_li, piecewise(x, &primes, |n, t| n - li_f(t))),
            (r.int_pi_minus_li_over_t2, piecewise(x, &primes, |n, t| (n - li_f(t)) / (t * t))),
            (r.int_pi_minus_li_logt_over_t2, piecewise(x, &primes, |n, t| (n - li_f(t)) * t.ln() / (t * t))),
            (r.int_theta_minus_t, piecewise(x, &primes, |n, t| theta_at(n) - t)),
            (r.int_theta_minus_t_over_t2, piecewise(x, &primes, |n, t| (theta_at(n) - t) / (t * t))),
        ];
        for (k, (got, want)) in cases.iter().enumerate() {
            let tol = 1e-10 * want.abs().max(1.0);
            assert!((got - want).abs() < tol, "case {k} at {x}: {got} vs {want}");
        }
        assert!(r.abs_error_budget < 1e-6);
    }
}

#[test]
fn execution_modes_agree() {
    let pts = [2.5, 100.0, 7919.0, 7920.0, 65_536.5];
    let cs = ConstantSet::standard();
    let a = evaluate(&pts, cs, &cfg().with_execution(Execution::Sequential)).unwrap();
    let b = evaluate(&pts, cs, &cfg().with_execution(Execution::Parallel)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn identity_residuals() {
    let cases = [
        ("pi-from-theta", 1e5, 1e-9),
        ("theta-from-pi", 1e5, 1e-9),
        ("reciprocal-mean", 2.0, 1e-12),
        ("reciprocal-mean", 1e5, 1e-10),
        ("abel", 1e5, 1e-12),
        ("loglog", 1e5, 1e-12),
        ("log-weighted", 1e6, 1e-10),
        ("theta-mean", 1e5, 1e-10),
        ("riemann-pi", 1e4, 1e-8),
    ];
    for (name, x, tol) in cases {
        let r = check_identity(name, x).unwrap();
        assert!(r < tol, "{name} at {x}: {r:e}");
    }
    assert!(check_identity("no-such", 10.0).is_err());
}

#[test]
fn identity_ids_round_trip() {
    for id in IdentityId::ALL {
        assert_eq!(id.as_str().parse::<IdentityId>().unwrap(), id);
    }
}

#[test]
fn a2_against_direct_sum() {
    // Sum log p / p - log x converges to this value
    let e = -1.332_582_275_733_220_881_765_8;
    let x = 1e6;
    let s: f64 = small_primes(1_000_000).iter().map(|&p| (p as f64).ln() / p as f64).sum();
    let (a2, err) = A2(x).unwrap();
    assert!((a2 - (s - x.ln() - e)).abs() < 1e-11);
    assert!(err < 1e-12);
}

#[test]
fn a1_a2_within_classical_bounds() {
    for x in [1e3, 1e5, 3e6] {
        let l = f64::ln(x);
        let (a1, _) = A1(x).unwrap();
        let (a2, _) = A2(x).unwrap();
        assert!(a1.abs() < 1.0 / (2.0 * l * l), "A1({x}) = {a1}");
        assert!(a2.abs() < 1.0 / (2.0 * l), "A2({x}) = {a2}");
    }
}

#[test]
fn walk_matches_prefix_sums() {
    let pts = [3.0, 1000.5, 50_000.0];
    let cs = ConstantSet::standard();
    let w = walk(&pts, &cfg()).unwrap();
    let r = evaluate(&pts, cs, &cfg()).unwrap();
    for (w, r) in w.iter().zip(&r) {
        // integral of (theta - t)/t^2 two ways
        let via_walk = w.theta_over_t2 - (w.x.ln() - std::f64::consts::LN_2);
        assert!((via_walk - r.int_theta_minus_t_over_t2).abs() < 1e-12);
        assert!((w.r1 - r.r1).abs() < 1e-9 * r.r1.abs().max(1.0));
    }
}

#[test]
fn sign_sweep_small() {
    let s = sign_sweep(200_000, &cfg()).unwrap();
    for st in s.stats() {
        assert!(st.passed(), "{st:?}");
    }
    assert_eq!(s.li_minus_pi_lower.checked, 17_984);
    assert_eq!(s.pi_minus_li.checked, 17_983);
}

#[test]
fn sweep_matches_reports_at_primes() {
    let s = sign_sweep(7919, &cfg()).unwrap();
    let r = evaluate(&[7919.0], ConstantSet::standard(), &cfg()).unwrap().remove(0);
    // the closest approach for a decreasing integral is at the first prime
    assert!(s.theta_minus_t.min_margin > 0.0);
    assert!(-r.int_theta_minus_t >= s.theta_minus_t.min_margin);
}

#[test]
fn csv_has_version_column() {
    let r = evaluate(&[10.0, 100.0], ConstantSet::standard(), &cfg()).unwrap();
    let mut buf = Vec::new();
    write_csv(&mut buf, &r).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap().split(',').count(), CSV_COLUMNS.len());
    assert!(lines.all(|l| l.ends_with(CSV_VERSION)));
}
