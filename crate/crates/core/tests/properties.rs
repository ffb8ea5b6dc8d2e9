use proptest::prelude::*;

use primint::constants::ConstantSet;
use primint::logint::li;
use primint::primes::{accumulate, pi, prefix_sums, SieveConfig};
use primint::stepintegrals::evaluate;

fn seg() -> SieveConfig {
    SieveConfig::new(2, 3).with_segment_bytes(1 << 14)
}

/// Real fields agree to a few ulps of the accumulated magnitude.
fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 4.0 * f64::EPSILON * a.abs().max(b.abs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn merge_is_the_accumulator_of_the_union(lo in 2u64..400_000, a in 1u64..600_000, b in 1u64..600_000) {
        let (m, hi) = (lo + a, lo + a + b);
        let whole = accumulate(&seg().with_range(lo, hi)).unwrap();
        let left = accumulate(&seg().with_range(lo, m)).unwrap();
        let right = accumulate(&seg().with_range(m, hi)).unwrap();
        let merged = left.merge(&right).unwrap();
        prop_assert_eq!(merged.span, whole.span);
        prop_assert_eq!(merged.count, whole.count);
        prop_assert_eq!(merged.sum_p, whole.sum_p);
        for (x, y) in [
            (&merged.sum_log, &whole.sum_log),
            (&merged.sum_inv, &whole.sum_inv),
            (&merged.sum_log_over_p, &whole.sum_log_over_p),
            (&merged.sum_inv_logp1, &whole.sum_inv_logp1),
            (&merged.sum_p_log, &whole.sum_p_log),
        ] {
            prop_assert!(close(x.value(), y.value()), "{} vs {}", x.value(), y.value());
        }
        // merging is associative across a second split
        let k = lo + a / 2;
        if k > lo && k < m {
            let l1 = accumulate(&seg().with_range(lo, k)).unwrap();
            let l2 = accumulate(&seg().with_range(k, m)).unwrap();
            let assoc = l1.merge(&l2.merge(&right).unwrap()).unwrap();
            prop_assert_eq!(assoc.count, whole.count);
            prop_assert!(close(assoc.sum_log.value(), whole.sum_log.value()));
        }
    }

    #[test]
    fn counting_functions_step_correctly(start in 3u64..2_000_000) {
        let points: Vec<f64> = (start..start + 64).map(|n| n as f64).collect();
        let rows = prefix_sums(&points, &seg()).unwrap();
        for w in rows.windows(2) {
            let jump = w[1].pi() - w[0].pi();
            prop_assert!(jump <= 1);
            prop_assert!(w[1].theta() >= w[0].theta());
            prop_assert!(w[1].psi() >= w[1].theta());
        }
    }

    #[test]
    fn riemann_count_between_its_truncations(x in 4.0f64..1e7) {
        let r = &prefix_sums(&[x], &seg()).unwrap()[0];
        let big_pi = r.pi_riemann();
        let p = |t: f64| if t < 2.0 { 0.0 } else { pi(t).unwrap() as f64 };
        let m = x.log2().floor();
        let base = r.pi() as f64 + p(x.sqrt()) / 2.0;
        prop_assert!(big_pi >= base - 1e-12);
        prop_assert!(big_pi <= base + p(x.cbrt()) / 3.0 + m * p(x.powf(0.25)) / 4.0 + 1e-12);
    }

    #[test]
    fn li_is_increasing(a in 1.01f64..1e12, f in 1.0001f64..10.0) {
        prop_assert!(li(a * f).unwrap().value > li(a).unwrap().value);
    }

    #[test]
    fn integrals_are_continuous_in_x(x in 3.0f64..1e6) {
        // no jumps in x: the integrals move by at most |integrand| * h
        let h = 1e-6 * x;
        let r = evaluate(&[x, x + h], ConstantSet::standard(), &seg()).unwrap();
        let bound = (r[0].pi as f64 + li(x + h).unwrap().value + 1.0) * h;
        prop_assert!((r[1].int_pi_minus_li - r[0].int_pi_minus_li).abs() <= bound);
        prop_assert!((r[1].int_theta_minus_t - r[0].int_theta_minus_t).abs() <= (r[1].theta + x + h) * h);
    }
}
