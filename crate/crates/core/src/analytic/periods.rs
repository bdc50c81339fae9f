use num_complex::Complex;
use num_traits::Zero;

use super::gamma::scaled_upper_gamma;
use super::lstar::tail_factor;
use super::series::NumericSeries;
use super::{i_pow, ComplexValue, EvaluationConfig};
use crate::error::{Error, Result};
use crate::qseries::QSeries;
use crate::scalar::Real;

/// The regularized periods `r_0, …, r_{2k−2}` of a form of weight `2k`.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodVector<T> {
    pub k: u32,
    pub values: Vec<ComplexValue<T>>,
}

impl<T: Real> PeriodVector<T> {
    pub fn get(&self, n: usize) -> ComplexValue<T> {
        self.values[n]
    }

    /// Largest violation of `i^{−n+1} r_n = (−1)^{n+1} i^{−(2k−2−n)+1} r_{2k−2−n}`
    /// relative to `max |r_n|`.
    pub fn symmetry_defect(&self) -> f64 {
        let w = 2 * self.k as i64 - 2;
        let scale = self.values.iter().map(|v| v.abs().to_f64_lossy()).fold(0.0, f64::max).max(1e-300);
        let mut worst = 0.0f64;
        for n in 0..=w {
            let lhs = self.values[n as usize].value * i_pow::<T>(1 - n);
            let sign = if n % 2 == 0 { -T::one() } else { T::one() };
            let rhs = self.values[(w - n) as usize].value * i_pow::<T>(1 - (w - n)) * sign;
            worst = worst.max((lhs - rhs).norm().to_f64_lossy() / scale);
        }
        worst
    }

    /// Coefficients of `r(f; z) = Σ i^{−n+1} C(2k−2, n) r_n z^{2k−2−n}`,
    /// listed by increasing power of `z`.
    pub fn polynomial(&self) -> Vec<ComplexValue<T>> {
        let w = 2 * self.k as usize - 2;
        let mut out = vec![ComplexValue::zero(); w + 1];
        let mut binom = T::one();
        for n in 0..=w {
            let c = i_pow::<T>(1 - n as i64) * binom;
            out[w - n] = self.values[n].mul_complex(c);
            binom = binom * T::from_int((w - n) as i64) / T::from_int(n as i64 + 1);
        }
        out
    }

    pub fn eval_polynomial(&self, z: Complex<T>) -> ComplexValue<T> {
        self.polynomial().iter().rev().fold(ComplexValue::zero(), |acc, c| acc.mul_complex(z) + *c)
    }
}

fn weight_k(f: &QSeries) -> Result<u32> {
    let w = f.weight().ok_or(Error::MissingWeight)?;
    if w < 2 || w % 2 != 0 {
        return Err(Error::InvalidArgument(format!("periods need an even weight 2k ≥ 2, got {w}")));
    }
    Ok((w / 2) as u32)
}

fn numeric<T: Real>(f: &QSeries, cfg: &EvaluationConfig) -> Result<NumericSeries<T>> {
    if !f.constant_term().is_zero() {
        return Err(Error::ConstantTermPresent);
    }
    NumericSeries::from_qseries(f, cfg.truncation.min(f.truncation()))
}

/// `r_n(f) = R.∫_0^∞ f(it) t^n dt`, computed mode by mode after folding
/// `[0, 1]` onto `[1, ∞)` with `f(i/t) = (it)^{2k} f(it)`.
pub fn period_rn<T: Real>(f: &QSeries, n: usize, cfg: &EvaluationConfig) -> Result<ComplexValue<T>> {
    let k = weight_k(f)?;
    if n > 2 * k as usize - 2 {
        return Err(Error::InvalidArgument(format!("period index {n} exceeds 2k − 2 = {}", 2 * k - 2)));
    }
    period_rn_numeric(&numeric::<T>(f, cfg)?, k, n)
}

pub(crate) fn period_rn_numeric<T: Real>(f: &NumericSeries<T>, k: u32, n: usize) -> Result<ComplexValue<T>> {
    if !f.constant_term().is_zero() {
        return Err(Error::ConstantTermPresent);
    }
    let (s1, s2) = (n as i64 + 1, 2 * k as i64 - 1 - n as i64);
    let sign = if k.is_multiple_of(2) { T::one() } else { -T::one() };
    let one = T::one();
    let mut total = ComplexValue::zero();
    for &(m, a) in f.terms() {
        let lambda = T::tau() * T::from_int(m);
        let u = scaled_upper_gamma(s1, lambda, one)? + scaled_upper_gamma(s2, lambda, one)?.scale(sign);
        total = total + u.scale(a);
    }
    let lmin = std::f64::consts::TAU * (f.truncation() + 1) as f64;
    let bound = tail_factor(s1, 1.0, lmin) + tail_factor(s2, 1.0, lmin);
    let tail = bound * f.growth().tail(f.truncation(), 1.0);
    Ok(total.with_extra_error(T::from_f64_lossy(tail)))
}

/// All periods `r_0, …, r_{2k−2}`.
pub fn period_vector<T: Real>(f: &QSeries, cfg: &EvaluationConfig) -> Result<PeriodVector<T>> {
    let k = weight_k(f)?;
    period_vector_numeric(&numeric::<T>(f, cfg)?, k)
}

pub(crate) fn period_vector_numeric<T: Real>(f: &NumericSeries<T>, k: u32) -> Result<PeriodVector<T>> {
    let values = (0..=2 * k as usize - 2).map(|n| period_rn_numeric(f, k, n)).collect::<Result<_>>()?;
    Ok(PeriodVector { k, values })
}

/// Coefficients of the period polynomial `r(f; z)`, by increasing power of `z`.
pub fn period_polynomial<T: Real>(f: &QSeries, cfg: &EvaluationConfig) -> Result<Vec<ComplexValue<T>>> {
    Ok(period_vector::<T>(f, cfg)?.polynomial())
}

/// The Eichler integral `Σ_{n≠0} a_n n^{1−2k} q^n` truncated at `q^N`.
pub fn eichler_eval<T: Real>(f: &QSeries, k: u32, z: Complex<T>, n: i64) -> Result<ComplexValue<T>> {
    if !f.constant_term().is_zero() {
        return Err(Error::ConstantTermPresent);
    }
    let base = NumericSeries::<T>::from_qseries(f, n)?;
    let e = 2 * k as i32 - 1;
    let terms = base.terms().iter().map(|&(m, a)| (m, a / T::from_int(m).powi(e))).collect();
    NumericSeries::from_terms(terms, n, None).eval(z)
}
