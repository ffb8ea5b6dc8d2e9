//! Direct integration of the step functions piece by piece between their
//! jumps. This shares no formulas with the prime-sum evaluation and serves as
//! the second route in identity checks.

use crate::compensated::CompensatedSum;
use crate::dd::Dd;
use crate::error::Result;
use crate::primes::{enumerate_primes, floors, prime_powers, SieveConfig};
use crate::quad::GaussRule;

/// Integrals over `[2, x]` accumulated by the walk.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct WalkValues {
    pub x: f64,
    /// integral of theta(t) / (t log^2 t)
    pub theta_over_t_log2: f64,
    /// integral of pi(t) / t
    pub pi_over_t: f64,
    /// integral of pi(t) / t^2
    pub pi_over_t2: f64,
    /// integral of pi(t) log t / t^2
    pub pi_log_over_t2: f64,
    /// integral of theta(t) / t^2
    pub theta_over_t2: f64,
    /// integral of R1(t) (1/(t^2 log^2 t) + 2/(t^2 log^3 t)), R1 = integral of psi - t
    pub r1_weighted: f64,
    /// R1(x) advanced piece by piece
    pub r1: f64,
}

struct State {
    t: f64,
    pi: f64,
    theta: CompensatedSum,
    psi: CompensatedSum,
    r1: Dd,
    acc: [CompensatedSum; 6],
    rule: GaussRule,
}

impl State {
    fn integrate_to(&mut self, b: f64) {
        let a0 = self.t;
        if b <= a0 {
            return;
        }
        let pi = self.pi;
        let theta = self.theta.value();
        let psi = self.psi.value();
        // pieces no longer than a fifth of (start - 1) keep the rule accurate
        let max_h = 0.2 * (a0 - 1.0);
        let n = ((b - a0) / max_h).ceil().max(1.0) as usize;
        for i in 0..n {
            let a = if i == 0 { a0 } else { a0 + (b - a0) * i as f64 / n as f64 };
            let e = if i + 1 == n { b } else { a0 + (b - a0) * (i + 1) as f64 / n as f64 };
            let r1a = self.r1.to_f64();
            let slope = psi - a;
            let mut s = [0.0; 6];
            for (t, w) in self.rule.points(a, e) {
                let l = t.ln();
                let inv_t = 1.0 / t;
                let inv_t2 = inv_t * inv_t;
                let d = t - a;
                let r1 = r1a + slope * d - 0.5 * d * d;
                s[0] += w * theta * inv_t / (l * l);
                s[1] += w * pi * inv_t;
                s[2] += w * pi * inv_t2;
                s[3] += w * pi * l * inv_t2;
                s[4] += w * theta * inv_t2;
                s[5] += w * r1 * inv_t2 / (l * l) * (1.0 + 2.0 / l);
            }
            for (acc, v) in self.acc.iter_mut().zip(s) {
                acc.add(v);
            }
            let h = e - a;
            self.r1 = self.r1 + Dd::from_f64(slope).mul_f64(h) - Dd::from_f64(h).mul_f64(h).scale(0.5);
        }
        self.t = b;
    }

    fn snapshot(&self, x: f64) -> WalkValues {
        WalkValues {
            x,
            theta_over_t_log2: self.acc[0].value(),
            pi_over_t: self.acc[1].value(),
            pi_over_t2: self.acc[2].value(),
            pi_log_over_t2: self.acc[3].value(),
            theta_over_t2: self.acc[4].value(),
            r1_weighted: self.acc[5].value(),
            r1: self.r1.to_f64(),
        }
    }
}

/// Walks from 2 to the last point, recording the integrals at every point.
pub fn walk(points: &[f64], cfg: &SieveConfig) -> Result<Vec<WalkValues>> {
    let ns = floors(points)?;
    let Some(&n_max) = ns.last() else {
        return Ok(Vec::new());
    };
    let powers = prime_powers(n_max);
    let mut st = State {
        t: 2.0,
        pi: 0.0,
        theta: CompensatedSum::ZERO,
        psi: CompensatedSum::ZERO,
        r1: Dd::ZERO,
        acc: [CompensatedSum::ZERO; 6],
        rule: GaussRule::new(8),
    };
    let mut out = Vec::with_capacity(points.len());
    let mut next_point = 0;
    let mut next_power = 0;

    let jump = |st: &mut State, q: u64, prime: Option<u64>, out: &mut Vec<WalkValues>, next_point: &mut usize| {
        let qf = q as f64;
        while *next_point < points.len() && points[*next_point] < qf {
            st.integrate_to(points[*next_point]);
            out.push(st.snapshot(points[*next_point]));
            *next_point += 1;
        }
        st.integrate_to(qf);
        if let Some(p) = prime {
            let lp = (p as f64).ln();
            st.pi += 1.0;
            st.theta.add(lp);
            st.psi.add(lp);
        }
    };

    let cfg = cfg.clone().with_range(2, n_max + 1);
    enumerate_primes(&cfg, |p| {
        while next_power < powers.len() && powers[next_power].value < p {
            let pp = powers[next_power];
            jump(&mut st, pp.value, None, &mut out, &mut next_point);
            st.psi.add((pp.prime as f64).ln());
            next_power += 1;
        }
        jump(&mut st, p, Some(p), &mut out, &mut next_point);
    })?;
    while next_power < powers.len() {
        let pp = powers[next_power];
        jump(&mut st, pp.value, None, &mut out, &mut next_point);
        st.psi.add((pp.prime as f64).ln());
        next_power += 1;
    }
    while next_point < points.len() {
        st.integrate_to(points[next_point]);
        out.push(st.snapshot(points[next_point]));
        next_point += 1;
    }
    Ok(out)
}
