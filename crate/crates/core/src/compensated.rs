//! Compensated (Neumaier / two-sum) accumulation of binary64 terms.

use crate::dd::{two_sum, Dd};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CompensatedSum {
    pub sum: f64,
    pub comp: f64,
}

impl CompensatedSum {
    pub const ZERO: CompensatedSum = CompensatedSum { sum: 0.0, comp: 0.0 };

    #[inline]
    pub fn add(&mut self, x: f64) {
        let (s, e) = two_sum(self.sum, x);
        self.sum = s;
        self.comp += e;
    }

    pub fn merge(&self, other: &CompensatedSum) -> CompensatedSum {
        let (s, e) = two_sum(self.sum, other.sum);
        CompensatedSum { sum: s, comp: self.comp + other.comp + e }
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }

    pub fn dd(&self) -> Dd {
        Dd::from_f64(self.sum) + Dd::from_f64(self.comp)
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::ZERO;
        for x in iter {
            s.add(x);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancels_large_terms() {
        let s: CompensatedSum = [1e16, 1.0, -1e16, 1.0].into_iter().collect();
        assert_eq!(s.value(), 2.0);
    }

    #[test]
    fn merge_equals_sequential() {
        let xs: Vec<f64> = (1..2000).map(|k| 1.0 / k as f64).collect();
        let all: CompensatedSum = xs.iter().copied().collect();
        let a: CompensatedSum = xs[..700].iter().copied().collect();
        let b: CompensatedSum = xs[700..].iter().copied().collect();
        assert!((a.merge(&b).value() - all.value()).abs() <= 1e-15);
    }
}
