use super::*;

fn large_table() -> Option<ZeroTable> {
    let p = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/zeros_100k.txt");
    p.exists().then(|| load_zeros(p).unwrap())
}

fn line_of(e: Error) -> usize {
    match e {
        Error::ZeroTable { line, .. } => line,
        other => panic!("unexpected error {other}"),
    }
}

#[test]
fn parses_small_tables() {
    let zt = ZeroTable::parse("14.134725141734693790\n21.022039638771554993\n25.010857580145688763\n", "t").unwrap();
    assert_eq!(zt.count(), 3);
    assert!((zt.gammas[0] - 14.134725).abs() < 1e-6);
    assert!(ZeroTable::parse("# comment\n\n14.1347251417\n", "t").is_ok());
}

#[test]
fn rejects_bad_tables() {
    let e = ZeroTable::parse("", "t").unwrap_err();
    assert!(e.to_string().contains("no zeros"));
    assert_eq!(line_of(ZeroTable::parse("14.1347251417\n25.01\n21.02\n", "t").unwrap_err()), 3);
    assert_eq!(line_of(ZeroTable::parse("14.1347251417\n-3\n", "t").unwrap_err()), 2);
    assert_eq!(line_of(ZeroTable::parse("14.1347251417\n\n2x.0\n", "t").unwrap_err()), 3);
    assert_eq!(line_of(ZeroTable::parse("14.1347\n", "t").unwrap_err()), 1);
    assert!(load_zeros("/nonexistent/zeros.txt").is_err());
}

#[test]
fn bundled_table() {
    let zt = ZeroTable::bundled();
    assert_eq!(zt.count(), 1000);
    assert!((zt.gammas[999] - 1419.422480945995).abs() < 1e-9);
}

#[test]
fn omega_of_first_zero() {
    let g: f64 = 14.134725;
    let zt = ZeroTable::parse("14.134725\n", "t").unwrap();
    let want = 2.0 / ((0.25 + g * g).sqrt() * (2.25 + g * g).sqrt());
    assert_eq!(omega_partial(&zt), want);
    assert!((want / 2.0 - 0.004974).abs() < 1e-6);
}

#[test]
fn partial_sums_increase_and_stay_below_limits() {
    let zt = ZeroTable::bundled();
    let cs = ConstantSet::standard();
    let lambda0 = cs.value("lambda0").unwrap();
    let mut prev = (0.0, 0.0);
    for n in [1, 2, 10, 100, 500, 1000] {
        let t = zt.truncated(n).unwrap();
        let cur = (omega_partial(&t), re_rho_sum_partial(&t));
        assert!(cur.0 > prev.0 && cur.1 > prev.1);
        assert!(cur.0 < lambda0 && cur.1 < lambda0 / 2.0);
        prev = cur;
    }
}

#[test]
fn re_rho_sum_within_tail_estimate() {
    let cs = ConstantSet::standard();
    let limit = re_rho_sum_limit(cs).unwrap();
    assert!((limit - 0.0230957).abs() < 1e-7);
    let check = |zt: &ZeroTable| {
        let tail = re_rho_tail(zt);
        let gap = limit - re_rho_sum_partial(zt) - tail.value;
        assert!(gap.abs() <= tail.uncertainty, "{} zeros: gap {gap:e}, tail {tail:?}", zt.count());
    };
    check(&ZeroTable::bundled());
    check(&ZeroTable::bundled().truncated(100).unwrap());
    if let Some(zt) = large_table() {
        check(&zt);
        assert!(omega_partial(&zt) < cs.value("lambda0").unwrap());
    }
}

#[test]
fn delta_bracket() {
    let cs = ConstantSet::standard();
    let ld = cs.value("c1").unwrap() - 2.0;
    let c0 = cs.value("c0").unwrap();
    for x in [2.0, 2.5, 10.0, 1e3, 1e6] {
        let d = delta_smooth(x, cs).unwrap();
        let upper = x * x / 2.0 - x * c0 + ld;
        let lower = upper - x / (2.0 * (x * x - 1.0));
        assert!(lower <= d && d <= upper, "x = {x}");
    }
    // the series converges geometrically with ratio 1/4 at x = 2
    let (_, bound) = trivial_series(2.0);
    assert!(bound < 1e-15);
    let closed = |x: f64| {
        let y = 1.0 / x;
        0.5 * x * ((1.0 + y) * (1.0 + y).ln() + (1.0 - y) * (1.0 - y).ln())
    };
    for x in [2.0, 3.0, 50.0] {
        assert!((trivial_series(x).0 - closed(x)).abs() < 1e-15);
    }
    // the trivial-zero part vanishes like 1/(2x)
    let x = 1e7;
    assert!((trivial_series(x).0 * 2.0 * x - 1.0).abs() < 1e-13);
    let smooth = x * x / 2.0 - x * c0 + ld;
    assert!((delta_smooth(x, cs).unwrap() - smooth).abs() <= 1e-15 * smooth);
    assert!(delta_smooth(1.5, cs).is_err());
}

#[test]
fn phase_reduction_near_a_million() {
    let lx = Dd::from_f64(1e6).ln();
    let r = phase(72000.5, lx);
    // 72000.5 log 10^6 = 994723.66792870671763..., reduced: 1.18602257048453839759
    assert!((r - 1.186_022_570_484_538_4).abs() < 1e-12, "{r}");
    let naive = (72000.5 * 1e6f64.ln()) % std::f64::consts::TAU;
    let naive = if naive > std::f64::consts::PI { naive - std::f64::consts::TAU } else { naive };
    assert!((naive - r).abs() > 1e-12);
}

#[test]
fn explicit_formula_at_two() {
    let cs = ConstantSet::standard();
    let zt = ZeroTable::bundled();
    let (lhs, _, _) = explicit_formula_residual(2.0, &zt).unwrap();
    assert!((lhs + delta_smooth(2.0, cs).unwrap()).abs() < 1e-14);
}

fn rms(v: &[f64]) -> f64 {
    (v.iter().map(|r| r * r).sum::<f64>() / v.len() as f64).sqrt()
}

#[test]
fn explicit_formula_residual_shrinks_with_more_zeros() {
    let cs = ConstantSet::standard();
    let cfg = SieveConfig::new(2, 3);
    let xs = [1e3, 1e4, 1e5, 1e6];
    let full = large_table().unwrap_or_else(ZeroTable::bundled);
    let mut prev = f64::INFINITY;
    for n in [100, 1000, 10_000, 100_000] {
        if n > full.count() {
            break;
        }
        let zt = full.truncated(n).unwrap();
        let res = explicit_formula(&xs, &zt, cs, &cfg).unwrap();
        // normalise by x^{3/2} so that every point weighs alike
        let scaled: Vec<f64> = res.iter().map(|r| r.residual / r.x.powf(1.5)).collect();
        let cur = rms(&scaled);
        assert!(cur < prev, "{n} zeros: rms {cur:e} vs {prev:e}");
        prev = cur;
        if n == 100_000 {
            assert!(res[3].residual.abs() < 1e-3 * 1e9);
        }
    }
}
