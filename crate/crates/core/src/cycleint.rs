//! Cycle integrals `C(f; Q) = ∫_{C_Q} f(z) Q(z, 1)^{k−1} dz` by direct
//! quadrature over the reduction cycle, by periods, and by twisted
//! L*-values for square discriminants.

use num_complex::Complex;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::{Serialize, Serializer};

use crate::analytic::lstar::lstar_numeric;
use crate::analytic::periods::period_vector_numeric;
use crate::analytic::quadrature::SegmentRule;
use crate::analytic::{i_pow, lstar_finite_part, ComplexValue, EvaluationConfig, NumericSeries, PeriodVector};
use crate::bqf::{cycle, cycle_polynomial, reduce, QuadraticForm, ReductionCycle};
use crate::error::{Error, Result};
use crate::qseries::{eisenstein_g, QSeries};
use crate::scalar::Real;

/// How a cycle integral was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Quadrature,
    Periods,
    Lstar,
    EisensteinRegularized,
}

impl std::fmt::Display for Route {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Route::Quadrature => "quadrature",
            Route::Periods => "periods",
            Route::Lstar => "lstar",
            Route::EisensteinRegularized => "eisenstein_regularized",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CycleIntegralResult<T> {
    pub value: ComplexValue<T>,
    pub route: Route,
    pub form: QuadraticForm,
    pub k: u32,
}

impl<T: Real> Serialize for CycleIntegralResult<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CycleIntegralResult", 4)?;
        st.serialize_field("value", &self.value)?;
        st.serialize_field("route", &self.route)?;
        st.serialize_field("Q", &self.form)?;
        st.serialize_field("k", &self.k)?;
        st.end()
    }
}

/// Base points used for the quadrature route; the second one only checks
/// that the result does not depend on the choice.
const BASE_POINTS: [(f64, f64); 2] = [(0.0, 1.0), (0.3, 1.2)];

/// A weight-`2k` form prepared for repeated numerical use.
#[derive(Debug, Clone)]
pub struct PreparedForm<T> {
    series: NumericSeries<T>,
    k: u32,
    constant: T,
    quad_degree: usize,
    tol: f64,
}

impl<T: Real> PreparedForm<T> {
    pub fn new(f: &QSeries, cfg: &EvaluationConfig) -> Result<Self> {
        let w = f.weight().ok_or(Error::MissingWeight)?;
        if w < 2 || w % 2 != 0 {
            return Err(Error::InvalidArgument(format!("cycle integrals need an even weight 2k ≥ 2, got {w}")));
        }
        let series = NumericSeries::from_qseries(f, cfg.truncation.min(f.truncation()))?;
        let constant = T::from_rational(&f.constant_term());
        Ok(Self { series, k: (w / 2) as u32, constant, quad_degree: cfg.quad_degree, tol: cfg.tol })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn is_cuspidal(&self) -> bool {
        self.constant.is_zero()
    }

    pub fn series(&self) -> &NumericSeries<T> {
        &self.series
    }

    pub(crate) fn tol(&self) -> f64 {
        self.tol
    }

    pub fn periods(&self) -> Result<PeriodVector<T>> {
        period_vector_numeric(&self.series, self.k)
    }
}

fn to_t<T: Real>(n: &num_bigint::BigInt) -> T {
    T::from_bigint(n)
}

fn cycle_of(q: &QuadraticForm) -> Result<ReductionCycle> {
    if q.is_square_discriminant() {
        return Err(Error::SquareDiscriminant(q.discriminant().to_string()));
    }
    let (r, _) = reduce(q)?;
    cycle(&r)
}

/// `Σ_j ∫_{z0}^{M_j z0} f(z) Q_{j−1}(z, 1)^{k−1} dz` for one base point.
fn quadrature_at<T: Real>(
    p: &PreparedForm<T>,
    cyc: &ReductionCycle,
    z0: Complex<T>,
    rule: &SegmentRule<T>,
) -> Result<ComplexValue<T>> {
    let e = p.k as i32 - 1;
    let mut total = ComplexValue::zero();
    for (form, m) in cyc.forms.iter().zip(&cyc.steps) {
        let (a, b, c) = (to_t::<T>(&form.a), to_t::<T>(&form.b), to_t::<T>(&form.c));
        let integrand = |z: Complex<T>| -> Result<ComplexValue<T>> {
            let poly = (z * z * a + z * b + c).powi(e);
            Ok(p.series.eval(z)?.mul_complex(poly))
        };
        // M_m z0 = (m z0 + 1) / (−z0)
        let mz = -(z0 * to_t::<T>(m) + T::one()) / z0;
        total = total + rule.integrate(integrand, z0, mz)?;
    }
    Ok(total)
}

pub(crate) fn quadrature_prepared<T: Real>(p: &PreparedForm<T>, q: &QuadraticForm) -> Result<CycleIntegralResult<T>> {
    let cyc = cycle_of(q)?;
    let rule = SegmentRule::new(p.quad_degree);
    let pts: Vec<Complex<T>> =
        BASE_POINTS.iter().map(|&(x, y)| Complex::new(T::from_f64_lossy(x), T::from_f64_lossy(y))).collect();
    let v1 = quadrature_at(p, &cyc, pts[0], &rule)?;
    let v2 = quadrature_at(p, &cyc, pts[1], &rule)?;
    let gap = v1.gap(&v2);
    let tolerance = p.tol * (1.0 + v1.abs().to_f64_lossy());
    if gap.to_f64_lossy() > tolerance {
        return Err(Error::ToleranceNotMet {
            what: format!("base point independence of C(f; {q})"),
            gap: gap.to_f64_lossy(),
            tolerance,
        });
    }
    let value = ComplexValue::new(v1.value, v1.err.max(gap));
    Ok(CycleIntegralResult { value, route: Route::Quadrature, form: q.clone(), k: p.k })
}

/// `C(f; Q)` by Gauss–Legendre quadrature along the reduction cycle of `Q`,
/// checked at two base points.
pub fn cycle_integral_quadrature<T: Real>(
    f: &QSeries,
    q: &QuadraticForm,
    cfg: &EvaluationConfig,
) -> Result<CycleIntegralResult<T>> {
    quadrature_prepared(&PreparedForm::new(f, cfg)?, q)
}

/// The quadrature route at a single base point `z0`, without the internal
/// cross-check.
pub fn cycle_integral_quadrature_at<T: Real>(
    f: &QSeries,
    q: &QuadraticForm,
    z0: Complex<T>,
    cfg: &EvaluationConfig,
) -> Result<ComplexValue<T>> {
    if z0.im <= T::zero() {
        return Err(Error::InvalidArgument(format!("base point {z0} is not in the upper half-plane")));
    }
    let p = PreparedForm::new(f, cfg)?;
    quadrature_at(&p, &cycle_of(q)?, z0, &SegmentRule::new(cfg.quad_degree))
}

pub(crate) fn periods_prepared<T: Real>(
    p: &PreparedForm<T>,
    periods: &PeriodVector<T>,
    q: &QuadraticForm,
) -> Result<CycleIntegralResult<T>> {
    if q.is_square_discriminant() {
        return Err(Error::SquareDiscriminant(q.discriminant().to_string()));
    }
    if !p.is_cuspidal() {
        return Err(Error::ConstantTermPresent);
    }
    let poly = cycle_polynomial(p.k, q)?;
    let mut total = ComplexValue::zero();
    for (n, r) in periods.values.iter().enumerate() {
        let c = to_t::<T>(poly.coeff(n));
        total = total + r.mul_complex(i_pow::<T>(1 - n as i64) * c);
    }
    Ok(CycleIntegralResult { value: total, route: Route::Periods, form: q.clone(), k: p.k })
}

/// `C(f; Q) = Σ_n i^{−n+1} q^(n) r_n(f)` for `f` with vanishing constant term.
pub fn cycle_integral_periods<T: Real>(
    f: &QSeries,
    q: &QuadraticForm,
    cfg: &EvaluationConfig,
) -> Result<CycleIntegralResult<T>> {
    let p = PreparedForm::new(f, cfg)?;
    if !p.is_cuspidal() {
        return Err(Error::ConstantTermPresent);
    }
    let periods = p.periods()?;
    periods_prepared(&p, &periods, q)
}

/// Parameters `(s, s', c')` of the square representative `[0, s, c]` of `q`,
/// with `s' = s/g` and `c' = c/g` for `g = gcd(c, s)`.
pub(crate) fn square_parameters(q: &QuadraticForm) -> Result<(i64, i64, i64)> {
    if !q.is_square_discriminant() {
        return Err(Error::NonSquareDiscriminant(q.discriminant().to_string()));
    }
    let (r, _) = reduce(q)?;
    let too_big = || Error::InvalidArgument(format!("form {r} is too large for the L* route"));
    let s = r.b.to_i64().ok_or_else(too_big)?;
    let c = r.c.to_i64().ok_or_else(too_big)?;
    let g = c.gcd(&s);
    Ok((s, s / g, c / g))
}

/// `i^k s^{k−1} L*` at `t0`, with the finite-part rule for a constant term.
pub(crate) fn square_prepared<T: Real>(
    p: &PreparedForm<T>,
    q: &QuadraticForm,
    t0: Option<T>,
) -> Result<CycleIntegralResult<T>> {
    let (s, sp, cp) = square_parameters(q)?;
    let k = p.k;
    let t0 = t0.unwrap_or_else(|| T::one() / T::from_int(sp));
    let mut l = lstar_numeric(&p.series, k, sp, -cp, t0, k as i64)?;
    let route = if p.is_cuspidal() {
        Route::Lstar
    } else {
        l = l + lstar_finite_part(p.constant, k, sp, t0, k as i64)?;
        Route::EisensteinRegularized
    };
    let factor = i_pow::<T>(k as i64) * T::from_int(s).powi(k as i32 - 1);
    Ok(CycleIntegralResult { value: l.mul_complex(factor), route, form: q.clone(), k })
}

/// `C(f; Q) = i^k s^{k−1} L*_f(ζ_{s'}^{−c'}, k)` for a square discriminant `s²`.
pub fn cycle_integral_square<T: Real>(
    f: &QSeries,
    q: &QuadraticForm,
    cfg: &EvaluationConfig,
) -> Result<CycleIntegralResult<T>> {
    cycle_integral_square_at(f, q, None, cfg)
}

/// [`cycle_integral_square`] with an explicit splitting point `t0`.
pub fn cycle_integral_square_at<T: Real>(
    f: &QSeries,
    q: &QuadraticForm,
    t0: Option<T>,
    cfg: &EvaluationConfig,
) -> Result<CycleIntegralResult<T>> {
    let p = PreparedForm::new(f, cfg)?;
    if !p.is_cuspidal() {
        return Err(Error::ConstantTermPresent);
    }
    square_prepared(&p, q, t0)
}

/// The regularized cycle integral of `G_{2k}` over a square-discriminant
/// class; the constant term is handled by the Hadamard finite part.
pub fn eisenstein_cycle_square<T: Real>(
    k: u32,
    q: &QuadraticForm,
    cfg: &EvaluationConfig,
) -> Result<CycleIntegralResult<T>> {
    eisenstein_cycle_square_at(k, q, None, cfg)
}

/// [`eisenstein_cycle_square`] with an explicit splitting point `t0`.
pub fn eisenstein_cycle_square_at<T: Real>(
    k: u32,
    q: &QuadraticForm,
    t0: Option<T>,
    cfg: &EvaluationConfig,
) -> Result<CycleIntegralResult<T>> {
    let g = eisenstein_g(2 * k as i64, cfg.truncation)?;
    square_prepared(&PreparedForm::new(&g, cfg)?, q, t0)
}

/// Route dispatch: quadrature for non-square discriminants, L* for square
/// ones, with the finite part added when `f` has a constant term.
pub fn cycle_integral<T: Real>(
    f: &QSeries,
    q: &QuadraticForm,
    cfg: &EvaluationConfig,
) -> Result<CycleIntegralResult<T>> {
    cycle_integral_prepared(&PreparedForm::new(f, cfg)?, q)
}

pub(crate) fn cycle_integral_prepared<T: Real>(
    p: &PreparedForm<T>,
    q: &QuadraticForm,
) -> Result<CycleIntegralResult<T>> {
    let d = q.discriminant();
    if !d.is_positive() {
        return Err(Error::NonPositiveDiscriminant(d.to_string()));
    }
    if q.is_square_discriminant() {
        square_prepared(p, q, None)
    } else {
        quadrature_prepared(p, q)
    }
}

/// `ζ_[Q](1−k) = 2(−1)^k C(G_{2k}; Q)`.
pub fn zeta_q_neg<T: Real>(k: u32, q: &QuadraticForm, cfg: &EvaluationConfig) -> Result<ComplexValue<T>> {
    let g = eisenstein_g(2 * k as i64, cfg.truncation)?;
    let c = cycle_integral::<T>(&g, q, cfg)?;
    let sign = if k.is_multiple_of(2) { T::one() } else { -T::one() };
    Ok(c.value.scale(sign + sign))
}
