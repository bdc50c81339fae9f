use num_complex::Complex;
use num_traits::Zero;

use super::ComplexValue;
use crate::error::{Error, Result};
use crate::exactmath::Rational;
use crate::qseries::QSeries;
use crate::scalar::Real;

/// Coefficient growth model `|a_n| ≤ A n^p e^{B√n}` for `n ≥ 1`; one of `p`
/// and `B` is always zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Growth {
    pub a: f64,
    pub b: f64,
    pub p: f64,
}

impl Growth {
    /// Picks a polynomial model when `ln|a_n|/√n` is falling across the known
    /// range (cusp and Eisenstein coefficients) and an `e^{B√n}` model
    /// otherwise. The exponent is the largest ratio over the upper half of
    /// the range, `A` the smallest constant covering every known coefficient,
    /// doubled.
    fn fit(terms: &[(i64, f64)], truncation: i64) -> Self {
        let pos: Vec<(f64, f64)> =
            terms.iter().filter(|(n, l)| *n >= 1 && l.is_finite()).map(|&(n, l)| (n as f64, l)).collect();
        if pos.is_empty() {
            return Self { a: 0.0, b: 0.0, p: 0.0 };
        }
        let top = truncation.max(4) as f64;
        let ratio_max = |lo: f64, hi: f64, g: fn(f64) -> f64| {
            pos.iter().filter(|(n, _)| *n >= lo && *n <= hi).map(|(n, l)| l / g(*n)).fold(f64::NEG_INFINITY, f64::max)
        };
        let early = ratio_max(top / 4.0, top / 2.0, f64::sqrt);
        let late = ratio_max(0.75 * top, top, f64::sqrt);
        if late < early && top >= 16.0 {
            let p = ratio_max(top / 2.0, top, |n: f64| n.ln()).max(0.0);
            let ln_a = pos.iter().map(|(n, l)| l - p * n.ln()).fold(f64::NEG_INFINITY, f64::max);
            return Self { a: 2.0 * ln_a.exp(), b: 0.0, p };
        }
        let b = ratio_max(top / 2.0, top, f64::sqrt).max(0.0);
        let ln_a = pos.iter().map(|(n, l)| l - b * n.sqrt()).fold(f64::NEG_INFINITY, f64::max);
        Self { a: 2.0 * ln_a.exp(), b, p: 0.0 }
    }

    /// True when the model term at `n` is below `1e-3 · target` and the
    /// model terms decrease from `n` on.
    fn negligible_from(&self, n: i64, y: f64, target: f64) -> bool {
        if self.a == 0.0 {
            return true;
        }
        let nf = n as f64;
        let tau = std::f64::consts::TAU;
        let slope = self.b / (2.0 * nf.sqrt()) + self.p / nf - tau * y;
        if slope >= -0.1 {
            return false;
        }
        let ln_term = self.a.ln() + self.b * nf.sqrt() + self.p * nf.ln() - tau * nf * y;
        ln_term < (1e-3 * target).max(1e-300).ln()
    }

    /// Bound for `Σ_{n > N} |a_n| e^{-2π n y} g(n)` where `g(n) ≤ 1`.
    pub fn tail(&self, truncation: i64, y: f64) -> f64 {
        if self.a == 0.0 {
            return 0.0;
        }
        if y <= 0.0 {
            return f64::INFINITY;
        }
        let tau = std::f64::consts::TAU;
        let mut sum = 0.0;
        let mut prev = f64::INFINITY;
        let start = truncation.max(0) + 1;
        for n in start..start + 200_000 {
            let e = self.b * (n as f64).sqrt() + self.p * (n as f64).ln() - tau * n as f64 * y;
            let term = self.a * e.exp();
            sum += term;
            if term < prev && term <= 1e-40 * sum.max(1e-300) {
                return sum;
            }
            prev = term;
        }
        f64::INFINITY
    }
}

/// Floating copy of a q-series with a growth model for its unknown tail.
#[derive(Debug, Clone)]
pub struct NumericSeries<T> {
    terms: Vec<(i64, T)>,
    truncation: i64,
    weight: Option<i64>,
    growth: Growth,
    /// The exact coefficients when built from a [`QSeries`].
    exact: Option<Vec<(i64, Rational)>>,
}

impl<T: Real> NumericSeries<T> {
    /// Uses the coefficients of `f` up to `q^n`.
    pub fn from_qseries(f: &QSeries, n: i64) -> Result<Self> {
        if n > f.truncation() {
            return Err(Error::TruncationExceeded { requested: n, truncation: f.truncation() });
        }
        let terms: Vec<(i64, T)> =
            f.terms().take_while(|(e, _)| *e <= n).map(|(e, c)| (e, T::from_rational(c))).collect();
        let logs: Vec<(i64, f64)> = terms.iter().map(|&(e, c)| (e, c.abs().ln().to_f64_lossy())).collect();
        let growth = Growth::fit(&logs, n);
        let exact = Some(f.terms().take_while(|(e, _)| *e <= n).map(|(e, c)| (e, c.clone())).collect());
        Ok(Self { terms, truncation: n, weight: f.weight(), growth, exact })
    }

    pub fn from_terms(terms: Vec<(i64, T)>, truncation: i64, weight: Option<i64>) -> Self {
        let logs: Vec<(i64, f64)> = terms.iter().map(|&(e, c)| (e, c.abs().ln().to_f64_lossy())).collect();
        let growth = Growth::fit(&logs, truncation);
        Self { terms, truncation, weight, growth, exact: None }
    }

    pub fn exact_terms(&self) -> Option<&[(i64, Rational)]> {
        self.exact.as_deref()
    }

    pub fn terms(&self) -> &[(i64, T)] {
        &self.terms
    }

    pub fn truncation(&self) -> i64 {
        self.truncation
    }

    pub fn weight(&self) -> Option<i64> {
        self.weight
    }

    pub fn growth(&self) -> Growth {
        self.growth
    }

    pub fn constant_term(&self) -> T {
        self.terms.iter().find(|(n, _)| *n == 0).map_or_else(T::zero, |t| t.1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Σ a_n q^n` at `z`, with the tail beyond the truncation bounded by the
    /// growth model.
    pub fn eval(&self, z: Complex<T>) -> Result<ComplexValue<T>> {
        if z.im <= T::zero() {
            return Err(Error::InvalidArgument(format!("point {z} is not in the upper half-plane")));
        }
        if self.terms.is_empty() {
            let tail = self.growth.tail(self.truncation, z.im.to_f64_lossy());
            return Ok(ComplexValue::new(Complex::zero(), T::from_f64_lossy(tail)));
        }
        let tau = T::tau();
        let r = (-tau * z.im).exp();
        let theta = tau * z.re;
        let q = Complex::new(r * theta.cos(), r * theta.sin());
        let y = z.im.to_f64_lossy();
        let first = self.terms[0].0;
        let mut qn = complex_powi(q, first);
        let mut e = first;
        let mut sum = Complex::zero();
        let mut mag = T::zero();
        let mut cut = self.truncation;
        for &(n, c) in &self.terms {
            if n >= 1 && self.growth.negligible_from(n, y, mag.to_f64_lossy() * T::epsilon().to_f64_lossy()) {
                cut = n - 1;
                break;
            }
            while e < n {
                qn = qn * q;
                e += 1;
            }
            sum = sum + qn * c;
            mag = mag + c.abs() * qn.norm();
        }
        let round = if self.terms.len() == 1 && first == 0 {
            T::zero()
        } else {
            mag * T::epsilon() * T::from_int(cut - first + 4)
        };
        let tail = T::from_f64_lossy(self.growth.tail(cut, y));
        Ok(ComplexValue::new(sum, round + tail))
    }

    /// Evaluates after moving `z` into the standard fundamental domain and
    /// applying the weight-`w` transformation law.
    pub fn eval_modular(&self, z: Complex<T>) -> Result<ComplexValue<T>> {
        let w = self.weight.ok_or(Error::MissingWeight)?;
        let (zr, (c, d)) = to_fundamental_domain(z)?;
        let v = self.eval(zr)?;
        if c == 0 && d == 1 {
            return Ok(v);
        }
        // f(γz) = (cz + d)^w f(z)
        let j = z * T::from_int(c) + T::from_int(d);
        let factor = complex_powi(j, -w);
        Ok(v.mul_complex(factor))
    }
}

pub(crate) fn complex_powi<T: Real>(z: Complex<T>, n: i64) -> Complex<T> {
    if n < 0 {
        let inv = Complex::new(T::one(), T::zero()) / z;
        return complex_powi(inv, -n);
    }
    let mut result = Complex::new(T::one(), T::zero());
    let mut base = z;
    let mut n = n;
    while n > 0 {
        if n & 1 == 1 {
            result = result * base;
        }
        base = base * base;
        n >>= 1;
    }
    result
}

/// Returns `γz` in the fundamental domain and the bottom row `(c, d)` of `γ`.
fn to_fundamental_domain<T: Real>(z: Complex<T>) -> Result<(Complex<T>, (i64, i64))> {
    if z.im <= T::zero() {
        return Err(Error::InvalidArgument(format!("point {z} is not in the upper half-plane")));
    }
    // γ = [[a, b], [c, d]] accumulated as integers
    let (mut a, mut b, mut c, mut d) = (1i64, 0i64, 0i64, 1i64);
    let mut w = z;
    for _ in 0..10_000 {
        let n = w.re.round();
        let ni = n.to_i64().unwrap_or(0);
        if ni != 0 {
            w = Complex::new(w.re - n, w.im);
            a -= ni * c;
            b -= ni * d;
        }
        if w.norm_sqr() < T::one() - T::epsilon() * T::from_int(16) {
            w = -Complex::new(T::one(), T::zero()) / w;
            (a, b, c, d) = (-c, -d, a, b);
        } else {
            return Ok((w, (c, d)));
        }
    }
    Err(Error::InvalidArgument(format!("could not reduce {z} to the fundamental domain")))
}

/// `f(z)` by direct summation of its first `n` coefficients.
pub fn eval_qseries<T: Real>(f: &QSeries, z: Complex<T>, n: i64) -> Result<ComplexValue<T>> {
    NumericSeries::from_qseries(f, n)?.eval(z)
}

/// `f(z)` through the fundamental domain.
pub fn eval_modular<T: Real>(f: &QSeries, z: Complex<T>, n: i64) -> Result<ComplexValue<T>> {
    NumericSeries::from_qseries(f, n)?.eval_modular(z)
}
