//! Storage for Cohen's Eisenstein series of weight `k + 1/2`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{cohen_h, zeta_neg, Rational};

/// Coefficients supported on `m ≥ 0` with `(-1)^k m ≡ 0, 1 (mod 4)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfIntegralSeries {
    k: u32,
    truncation: i64,
    coefficients: BTreeMap<i64, Rational>,
}

impl HalfIntegralSeries {
    /// Whether `m` lies in the support allowed for parameter `k`.
    pub fn admissible(k: u32, m: i64) -> bool {
        let s = if k.is_multiple_of(2) { m } else { -m };
        m >= 0 && matches!(s.rem_euclid(4), 0 | 1)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn truncation(&self) -> i64 {
        self.truncation
    }

    pub fn coeff(&self, m: i64) -> Result<Rational> {
        if m > self.truncation {
            return Err(Error::TruncationExceeded { requested: m, truncation: self.truncation });
        }
        Ok(self.coefficients.get(&m).cloned().unwrap_or_else(Rational::zero))
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coefficients.iter().map(|(m, c)| (*m, c))
    }
}

/// `ζ(1-2k) + Σ H(k, (-1)^k m) q^m` up to `q^n`.
pub fn cohen_eisenstein(k: u32, n: i64) -> Result<HalfIntegralSeries> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("Cohen Eisenstein series needs k >= 2, got {k}")));
    }
    let mut coefficients = BTreeMap::new();
    coefficients.insert(0, zeta_neg(2 * k));
    let sign = if k.is_multiple_of(2) { 1 } else { -1 };
    for m in 1..=n {
        if HalfIntegralSeries::admissible(k, m) {
            coefficients.insert(m, cohen_h(k, sign * m)?);
        }
    }
    Ok(HalfIntegralSeries { k, truncation: n, coefficients })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    #[test]
    fn constant_term() {
        let h = cohen_eisenstein(2, 10).unwrap();
        assert_eq!(h.coeff(0).unwrap(), rat(1, 120));
    }

    #[test]
    fn support() {
        let h = cohen_eisenstein(2, 30).unwrap();
        for m in [2i64, 3, 6, 7, 10, 11] {
            assert!(h.coeff(m).unwrap().is_zero());
        }
        assert_eq!(h.coeff(4).unwrap(), cohen_h(2, 4).unwrap());
        assert_eq!(h.coeff(5).unwrap(), rat(-2, 5));
        assert!(h.coeff(31).is_err());
        let h3 = cohen_eisenstein(3, 20).unwrap();
        assert!(h3.terms().all(|(m, _)| HalfIntegralSeries::admissible(3, m)));
        assert_eq!(h3.coeff(3).unwrap(), cohen_h(3, -3).unwrap());
    }
}
