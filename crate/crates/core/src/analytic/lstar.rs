use num_integer::Integer;
use num_traits::Zero;

use super::gamma::scaled_upper_gamma;
use super::series::NumericSeries;
use super::wide::twisted_sum;
use super::{root_of_unity, ComplexValue, EvaluationConfig};
use crate::error::{Error, Result};
use crate::exactmath::Rational;
use crate::qseries::QSeries;
use crate::scalar::Real;

/// `a` with `a·d ≡ 1 (mod c)`.
pub(crate) fn twist_inverse(c: i64, d: i64) -> Result<i64> {
    if c < 1 {
        return Err(Error::InvalidArgument(format!("twist modulus c = {c} must be positive")));
    }
    if c == 1 {
        return Ok(0);
    }
    let e = d.rem_euclid(c).extended_gcd(&c);
    if e.gcd != 1 {
        return Err(Error::NonInvertibleTwist { c, d });
    }
    Ok(e.x.rem_euclid(c))
}

/// The twisted completed L-value of a form of weight `2k`:
///
/// `Σ a_m ζ_c^{dm} U(s, 2πm, t₀) + (−1)^k c^{2k−2s} Σ a_m ζ_c^{−am} U(2k−s, 2πm, 1/(c²t₀))`
///
/// with `U(s, λ, y) = Γ(s, λy)/λ^s` and `a·d ≡ 1 (mod c)`. The value does not
/// depend on `t₀ > 0`.
pub fn lstar<T: Real>(f: &QSeries, c: i64, d: i64, t0: T, s: i64, cfg: &EvaluationConfig) -> Result<ComplexValue<T>> {
    let w = f.weight().ok_or(Error::MissingWeight)?;
    if w < 2 || w % 2 != 0 {
        return Err(Error::InvalidArgument(format!("L* needs an even weight 2k ≥ 2, got {w}")));
    }
    if !f.constant_term().is_zero() {
        return Err(Error::ConstantTermPresent);
    }
    let series = NumericSeries::from_qseries(f, cfg.truncation.min(f.truncation()))?;
    lstar_numeric(&series, (w / 2) as u32, c, d, t0, s)
}

pub(crate) fn lstar_numeric<T: Real>(
    f: &NumericSeries<T>,
    k: u32,
    c: i64,
    d: i64,
    t0: T,
    s: i64,
) -> Result<ComplexValue<T>> {
    let a = twist_inverse(c, d)?;
    if t0 <= T::zero() {
        return Err(Error::InvalidArgument("t0 must be positive".into()));
    }
    let k = k as i64;
    let s2 = 2 * k - s;
    let ct = T::from_int(c);
    let x = T::one() / (ct * ct * t0);
    let reflect = ct.powi((2 * k - 2 * s) as i32) * if k % 2 == 0 { T::one() } else { -T::one() };
    let wide = if s >= 1 && s2 >= 1 { wide_precision(f, k, c, t0, x) } else { None };
    let total = match wide {
        Some(bits) => {
            let exact = f.exact_terms().expect("wide precision needs exact terms");
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let reflect =
                Rational::from_integer(c.into()).pow((2 * k - 2 * s) as i32) * Rational::from_integer(sign.into());
            twisted_sum(exact, (s, s2), (c, d, a), t0, x, &reflect, bits)?
        }
        None => {
            let mut first = ComplexValue::zero();
            let mut second = ComplexValue::zero();
            for &(m, am) in f.terms() {
                if m == 0 {
                    continue;
                }
                let lambda = T::tau() * T::from_int(m);
                let u1 = scaled_upper_gamma(s, lambda, t0)?;
                let u2 = scaled_upper_gamma(s2, lambda, x)?;
                first = first + u1.mul_complex(root_of_unity::<T>(d * m, c)).scale(am);
                second = second + u2.mul_complex(root_of_unity::<T>(-a * m, c)).scale(am);
            }
            first + second.scale(reflect)
        }
    };
    let growth = f.growth();
    let (t0f, xf) = (t0.to_f64_lossy(), x.to_f64_lossy());
    let lmin = std::f64::consts::TAU * (f.truncation() + 1) as f64;
    let tail = tail_factor(s, t0f, lmin) * growth.tail(f.truncation(), t0f)
        + reflect.abs().to_f64_lossy() * tail_factor(s2, xf, lmin) * growth.tail(f.truncation(), xf);
    Ok(total.with_extra_error(T::from_f64_lossy(tail)))
}

/// Bits needed when the largest term `|a_m| e^{−2πm y}` would leave fewer
/// than half the digits of `T` after cancellation; `None` when `T` suffices
/// or the exact coefficients are unknown.
fn wide_precision<T: Real>(f: &NumericSeries<T>, k: i64, c: i64, t0: T, x: T) -> Option<usize> {
    f.exact_terms()?;
    let (t0f, xf) = (t0.to_f64_lossy(), x.to_f64_lossy());
    let ln_reflect = (2 * k) as f64 * (c as f64).ln();
    let tau = std::f64::consts::TAU;
    let ln_max = f
        .terms()
        .iter()
        .filter(|(m, _)| *m != 0)
        .map(|&(m, am)| {
            let l = am.abs().ln().to_f64_lossy();
            (l - tau * m as f64 * t0f).max(l + ln_reflect - tau * m as f64 * xf)
        })
        .fold(f64::NEG_INFINITY, f64::max);
    let eps = T::epsilon().to_f64_lossy();
    let rounding = ln_max + (f.terms().len().max(1) as f64).ln() + eps.ln();
    if rounding <= 0.5 * eps.ln() {
        return None;
    }
    let bits = T::BITS as f64 + (ln_max / std::f64::consts::LN_2).max(0.0) + 40.0;
    Some(((bits / 64.0).ceil() as usize * 64).max(128))
}

/// Bound on `U(s, λ, y) e^{λy}` over `λ ≥ λ_min`, where it is decreasing.
pub(crate) fn tail_factor(s: i64, y: f64, lambda_min: f64) -> f64 {
    if s < 1 {
        return 1.0 / (lambda_min * y);
    }
    // Σ_{j<s} (s−1)!/j! · y^j / λ^{s−j}
    let mut term = y.powi(s as i32 - 1) / lambda_min;
    let mut sum = term;
    for j in (0..s - 1).rev() {
        term *= (j + 1) as f64 / (y * lambda_min);
        sum += term;
    }
    sum
}

/// Contribution of a constant term `a₀` to the regularized L*-value, from
/// `R.∫_{t₀}^∞ t^j dt = −t₀^{j+1}/(j+1)` on both halves of the path.
pub fn lstar_finite_part<T: Real>(a0: T, k: u32, c: i64, t0: T, s: i64) -> Result<ComplexValue<T>> {
    let k = k as i64;
    let s2 = 2 * k - s;
    if s == 0 || s2 == 0 {
        return Err(Error::InvalidArgument(format!("finite part undefined for s = {s}, k = {k}")));
    }
    if c < 1 || t0 <= T::zero() {
        return Err(Error::InvalidArgument("finite part needs c ≥ 1 and t0 > 0".into()));
    }
    let ct = T::from_int(c);
    let x = T::one() / (ct * ct * t0);
    let sign = if k % 2 == 0 { T::one() } else { -T::one() };
    let v1 = -a0 * t0.powi(s as i32) / T::from_int(s);
    let v2 = -sign * ct.powi((2 * k - 2 * s) as i32) * a0 * x.powi(s2 as i32) / T::from_int(s2);
    let value = v1 + v2;
    let err = (v1.abs() + v2.abs()) * T::epsilon() * T::from_int(8);
    Ok(ComplexValue::new(num_complex::Complex::new(value, T::zero()), err))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::period_rn;
    use crate::qseries::{delta, weakly_basis};
    use crate::scalar::DoubleDouble;
    use num_traits::Float;

    type D = DoubleDouble;

    fn cfg() -> EvaluationConfig {
        EvaluationConfig::default()
    }

    #[test]
    fn twist_inverse_cases() {
        assert_eq!(twist_inverse(5, 2).unwrap(), 3);
        assert_eq!(twist_inverse(1, 17).unwrap(), 0);
        assert_eq!(twist_inverse(7, -3).unwrap(), 2);
        assert_eq!(twist_inverse(6, 4).unwrap_err(), Error::NonInvertibleTwist { c: 6, d: 4 });
    }

    #[test]
    fn independent_of_t0_for_delta() {
        let d = delta(400);
        let cfg = cfg().with_truncation(400);
        for s in [6, 3, 9, 1] {
            let vals: Vec<_> = [0.5, 0.7, 1.0, 1.3, 2.0]
                .iter()
                .map(|&t| lstar::<D>(&d, 5, 2, D::from_f64(t), s, &cfg).unwrap())
                .collect();
            let scale = vals[0].abs().to_f64_lossy();
            for v in &vals[1..] {
                let gap = v.gap(&vals[0]);
                assert!(gap <= v.err + vals[0].err + D::from_f64(1e-28), "s={s}: {v} vs {}", vals[0]);
                assert!(gap.to_f64_lossy() < 1e-8 * scale, "s={s}: {v} vs {}", vals[0]);
            }
            assert!(vals[1].gap(&vals[3]).to_f64_lossy() < 1e-9);
        }
    }

    #[test]
    fn independent_of_t0_with_principal_part() {
        let f = weakly_basis(12, 1, 300).unwrap();
        for (c, d) in [(1, 0), (3, 1), (5, 2)] {
            let t = 1.0 / c as f64;
            let a = lstar::<D>(&f, c, d, D::from_f64(0.8 * t), 6, &cfg()).unwrap();
            let b = lstar::<D>(&f, c, d, D::from_f64(1.25 * t), 6, &cfg()).unwrap();
            assert!(a.gap(&b) <= a.err + b.err + D::from_f64(1e-25), "{a} vs {b}");
            assert!(a.gap(&b).to_f64_lossy() < 1e-10 * a.abs().to_f64_lossy().max(1.0), "{a} vs {b}");
        }
    }

    #[test]
    fn untwisted_value_is_a_period() {
        let d = delta(200);
        let l = lstar::<D>(&d, 1, 0, D::ONE, 6, &cfg()).unwrap();
        let r = period_rn::<D>(&d, 5, &cfg()).unwrap();
        assert!(l.gap(&r).to_f64_lossy() < 1e-25);
    }

    #[test]
    fn zero_form_and_errors() {
        let z = QSeries::zero(40, Some(12));
        assert!(lstar::<f64>(&z, 5, 2, 1.0, 6, &cfg()).unwrap().abs() == 0.0);
        let d = delta(40);
        assert!(matches!(lstar::<f64>(&d, 4, 2, 1.0, 6, &cfg()), Err(Error::NonInvertibleTwist { .. })));
    }

    #[test]
    fn finite_part_depends_on_t0_only_through_the_constant() {
        // a₀ = 1, k = 2, c = 1, s = 2: −t₀²/2 − (1/t₀)²/2
        let v = lstar_finite_part(D::ONE, 2, 1, D::from_f64(2.0), 2).unwrap();
        assert!((v.re() + D::from_f64(2.125)).abs().to_f64_lossy() < 1e-30);
        assert!(lstar_finite_part(D::ONE, 2, 1, D::ONE, 4).is_err());
    }
}
