//! Floating evaluation layer: q-series with tail bounds, incomplete gamma
//! functions, periods, Eichler integrals and twisted L*-values.

pub(crate) mod gamma;
pub(crate) mod lstar;
pub(crate) mod periods;
pub(crate) mod quadrature;
pub(crate) mod series;
mod wide;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::scalar::Real;

pub use gamma::{inc_gamma, scaled_upper_gamma, GammaValue};
pub use lstar::{lstar, lstar_finite_part};
pub use periods::{eichler_eval, period_polynomial, period_rn, period_vector, PeriodVector};
pub use quadrature::{gauss_legendre, integrate_segment};
pub use series::{eval_modular, eval_qseries, Growth, NumericSeries};

/// A complex number with a non-negative absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexValue<T> {
    pub value: Complex<T>,
    pub err: T,
}

impl<T: Real> ComplexValue<T> {
    pub fn new(value: Complex<T>, err: T) -> Self {
        Self { value, err: err.abs() }
    }

    pub fn exact(value: Complex<T>) -> Self {
        Self { value, err: T::zero() }
    }

    pub fn real(x: T) -> Self {
        Self::exact(Complex::new(x, T::zero()))
    }

    pub fn zero() -> Self {
        Self::exact(Complex::zero())
    }

    pub fn re(&self) -> T {
        self.value.re
    }

    pub fn im(&self) -> T {
        self.value.im
    }

    pub fn abs(&self) -> T {
        self.value.norm()
    }

    pub fn scale(&self, c: T) -> Self {
        let v = self.value * c;
        Self::new(v, self.err * c.abs() + rounding(v.norm()))
    }

    pub fn mul_complex(&self, c: Complex<T>) -> Self {
        let v = self.value * c;
        Self::new(v, self.err * c.norm() + rounding(v.norm()))
    }

    pub fn with_extra_error(mut self, e: T) -> Self {
        self.err = self.err + e.abs();
        self
    }

    /// `|self - other|`.
    pub fn gap(&self, other: &Self) -> T {
        (self.value - other.value).norm()
    }

    pub fn to_f64(&self) -> (f64, f64, f64) {
        (self.value.re.to_f64_lossy(), self.value.im.to_f64_lossy(), self.err.to_f64_lossy())
    }
}

fn rounding<T: Real>(magnitude: T) -> T {
    magnitude * T::epsilon() * T::from_int(4)
}

impl<T: Real> Add for ComplexValue<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let v = self.value + o.value;
        Self::new(v, self.err + o.err + rounding(v.norm()))
    }
}

impl<T: Real> Sub for ComplexValue<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let v = self.value - o.value;
        Self::new(v, self.err + o.err + rounding(v.norm()))
    }
}

impl<T: Real> Mul for ComplexValue<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let v = self.value * o.value;
        let err = self.value.norm() * o.err + o.value.norm() * self.err + self.err * o.err;
        Self::new(v, err + rounding(v.norm()))
    }
}

impl<T: Real> Neg for ComplexValue<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { value: -self.value, err: self.err }
    }
}

impl<T: Real> std::iter::Sum for ComplexValue<T> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}

impl<T: Real> fmt::Display for ComplexValue<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        write!(
            f,
            "{:.*e} {} {:.*e}i ± {:.2e}",
            digits,
            self.value.re,
            if self.value.im.is_sign_negative() { '-' } else { '+' },
            digits,
            self.value.im.abs(),
            self.err.to_f64_lossy()
        )
    }
}

impl<T: Real> Serialize for ComplexValue<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let (re, im, err) = self.to_f64();
        let mut st = s.serialize_struct("ComplexValue", 3)?;
        st.serialize_field("re", &re)?;
        st.serialize_field("im", &im)?;
        st.serialize_field("err", &err)?;
        st.end()
    }
}

/// Numerical controls shared by every evaluation routine.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvaluationConfig {
    /// Working precision in bits; 53 selects `f64` and 106 `DoubleDouble`.
    pub prec: u32,
    /// Number of q-expansion terms used in evaluations.
    pub truncation: i64,
    /// Gauss–Legendre nodes per quadrature piece.
    pub quad_degree: usize,
    /// Agreement tolerance for internal consistency checks.
    pub tol: f64,
}

impl Default for EvaluationConfig {
    fn default() -> Self {
        Self { prec: 106, truncation: crate::qseries::DEFAULT_TRUNCATION, quad_degree: 64, tol: 1e-8 }
    }
}

impl EvaluationConfig {
    pub fn with_truncation(mut self, n: i64) -> Self {
        self.truncation = n;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }
}

/// `i^n`.
pub fn i_pow<T: Real>(n: i64) -> Complex<T> {
    let (o, z) = (T::one(), T::zero());
    match n.rem_euclid(4) {
        0 => Complex::new(o, z),
        1 => Complex::new(z, o),
        2 => Complex::new(-o, z),
        _ => Complex::new(z, -o),
    }
}

/// `e^{2πi r/c}` with the residue reduced exactly first.
pub fn root_of_unity<T: Real>(r: i64, c: i64) -> Complex<T> {
    let r = r.rem_euclid(c);
    if r == 0 {
        return Complex::new(T::one(), T::zero());
    }
    let theta = T::tau() * T::from_int(r) / T::from_int(c);
    Complex::new(theta.cos(), theta.sin())
}
