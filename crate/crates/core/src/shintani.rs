//! Genus-character traces of cycle integrals, the Shintani lift assembled
//! from them, and verification reports for the identities they satisfy.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex;
use rand::{rngs::StdRng, Rng, SeedableRng};
use serde::Serialize;
use serde_json::json;

use crate::analytic::{lstar, ComplexValue, EvaluationConfig, NumericSeries, PeriodVector};
use crate::bqf::{class_representatives, genus_char, QuadraticForm};
use crate::cycleint::{
    cycle_integral_prepared, cycle_integral_quadrature_at, periods_prepared, quadrature_prepared, square_parameters,
    square_prepared, PreparedForm, Route,
};
use crate::error::{Error, Result};
use crate::exactmath::{cohen_h, zeta_neg, FundamentalDiscriminant, Rational};
use crate::qseries::{bol, eisenstein_g, weakly_basis, HalfIntegralSeries, QSeries};
use crate::scalar::Real;

/// Whether `m` carries a coefficient of a lift with parameter `k`.
pub fn lift_admissible(k: u32, m: i64) -> bool {
    m > 0 && HalfIntegralSeries::admissible(k, m)
}

fn check_delta(k: u32, delta: FundamentalDiscriminant) -> Result<()> {
    let d = delta.value();
    let ok = if k.is_multiple_of(2) { d > 0 } else { d < 0 };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidDelta { delta: d, k: k as i64 })
    }
}

/// The default `δ` for weight `2k`: `1` for even `k`, `−3` for odd `k`.
pub fn default_delta(k: u32) -> FundamentalDiscriminant {
    let d = if k.is_multiple_of(2) { 1 } else { -3 };
    FundamentalDiscriminant::new(d).expect("1 and -3 are fundamental")
}

/// One trace `Σ_Q χ_δ(Q) C(f; Q)` over the classes of discriminant `|δ|m`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace<T> {
    pub value: ComplexValue<T>,
    pub routes: BTreeSet<Route>,
    /// Classes with non-zero genus character.
    pub classes: usize,
}

/// A form prepared once and traced at many indices.
struct Tracer<T> {
    form: PreparedForm<T>,
    periods: Option<PeriodVector<T>>,
}

impl<T: Real> Tracer<T> {
    fn new(f: &QSeries, k: u32, cfg: &EvaluationConfig) -> Result<Self> {
        let form = PreparedForm::new(f, cfg)?;
        if form.k() != k {
            return Err(Error::WeightMismatch { expected: 2 * k as i64, found: 2 * form.k() as i64 });
        }
        let periods = if form.is_cuspidal() { Some(form.periods()?) } else { None };
        Ok(Self { form, periods })
    }

    fn trace(&self, delta: FundamentalDiscriminant, m: i64) -> Result<Trace<T>> {
        let k = self.form.k();
        check_delta(k, delta)?;
        if !lift_admissible(k, m) {
            return Err(Error::InvalidIndex { m, k: k as i64 });
        }
        let disc = delta.value().abs() * m;
        let mut value = ComplexValue::zero();
        let mut routes = BTreeSet::new();
        let mut classes = 0;
        for q in class_representatives(disc)? {
            let chi = genus_char(delta, &q)?;
            if chi == 0 {
                continue;
            }
            let c = cycle_integral_prepared(&self.form, &q)?;
            routes.insert(c.route);
            let mut v = c.value;
            if let (Some(periods), false) = (&self.periods, q.is_square_discriminant()) {
                v = self.cross_check(v, periods, &q)?;
                routes.insert(Route::Periods);
            }
            value = if chi > 0 { value + v } else { value - v };
            classes += 1;
        }
        Ok(Trace { value, routes, classes })
    }

    /// Quadrature value checked against the period route; the gap is folded
    /// into the error.
    fn cross_check(&self, v: ComplexValue<T>, periods: &PeriodVector<T>, q: &QuadraticForm) -> Result<ComplexValue<T>> {
        let alt = periods_prepared(&self.form, periods, q)?;
        let gap = v.gap(&alt.value).to_f64_lossy();
        let tolerance = self.form.tol() * (1.0 + v.abs().to_f64_lossy());
        if gap.is_nan() || gap > tolerance {
            return Err(Error::ToleranceNotMet { what: format!("period cross-check on {q}"), gap, tolerance });
        }
        let mut out = v;
        out.err = out.err.max(T::from_f64_lossy(gap));
        Ok(out)
    }
}

/// `Σ_{Q ∈ Q_{|δ|m}/SL₂(Z)} χ_δ(Q) C(f; Q)` for `f` of weight `2k`.
pub fn trace<T: Real>(
    f: &QSeries,
    k: u32,
    delta: FundamentalDiscriminant,
    m: i64,
    cfg: &EvaluationConfig,
) -> Result<Trace<T>> {
    Tracer::new(f, k, cfg)?.trace(delta, m)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Real"))]
pub struct LiftCoefficient<T> {
    pub value: ComplexValue<T>,
    pub routes: BTreeSet<Route>,
    pub classes: usize,
}

/// Coefficients of the lift at the admissible `0 < m ≤ m_max`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Real"))]
pub struct LiftSeries<T> {
    pub k: u32,
    pub delta: i64,
    pub m_max: i64,
    pub coefficients: BTreeMap<i64, LiftCoefficient<T>>,
}

impl<T: Real> LiftSeries<T> {
    pub fn coeff(&self, m: i64) -> Option<&LiftCoefficient<T>> {
        self.coefficients.get(&m)
    }

    /// Largest `|c(m)|` over the stored coefficients.
    pub fn max_abs(&self) -> f64 {
        self.coefficients.values().map(|c| c.value.abs().to_f64_lossy()).fold(0.0, f64::max)
    }
}

/// The Shintani lift `Σ_m (Σ_Q χ_δ(Q) C(f; Q)) q^m` up to `q^{m_max}`.
///
/// Coefficients are computed on scoped worker threads; each one is an
/// independent trace so the result does not depend on scheduling.
pub fn shintani_lift<T: Real>(
    f: &QSeries,
    k: u32,
    delta: FundamentalDiscriminant,
    m_max: i64,
    cfg: &EvaluationConfig,
) -> Result<LiftSeries<T>> {
    check_delta(k, delta)?;
    let tracer = Tracer::<T>::new(f, k, cfg)?;
    let ms: Vec<i64> = (1..=m_max).filter(|&m| lift_admissible(k, m)).collect();
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(ms.len().max(1));
    let results: Vec<(i64, Result<Trace<T>>)> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let (tracer, ms) = (&tracer, &ms);
                scope.spawn(move || {
                    ms.iter().skip(w).step_by(workers).map(|&m| (m, tracer.trace(delta, m))).collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("trace worker panicked")).collect()
    });
    let mut coefficients = BTreeMap::new();
    let mut results = results;
    results.sort_by_key(|r| r.0);
    for (m, r) in results {
        let t = r?;
        coefficients.insert(m, LiftCoefficient { value: t.value, routes: t.routes, classes: t.classes });
    }
    Ok(LiftSeries { k, delta: delta.value(), m_max, coefficients })
}

/// Which gap decides a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GapKind {
    /// `|lhs − rhs|`
    Absolute,
    /// `|lhs − rhs| / |rhs|`
    Relative,
    /// `|lhs − rhs| / (1 + |rhs|)`
    Scaled,
}

/// One checked identity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub identity: String,
    pub parameters: serde_json::Value,
    pub lhs: ComplexValue<f64>,
    pub rhs: ComplexValue<f64>,
    pub abs_gap: f64,
    pub rel_gap: f64,
    pub compared: GapKind,
    pub tolerance: f64,
    pub pass: bool,
    pub routes: Vec<Route>,
}

impl Report {
    /// Passes iff the chosen gap is strictly below `tolerance`.
    pub fn compare<T: Real>(
        identity: &str,
        parameters: serde_json::Value,
        lhs: ComplexValue<T>,
        rhs: ComplexValue<T>,
        tolerance: f64,
        compared: GapKind,
        routes: impl IntoIterator<Item = Route>,
    ) -> Self {
        let abs_gap = lhs.gap(&rhs).to_f64_lossy();
        let scale = rhs.abs().to_f64_lossy();
        let rel_gap = if scale > 0.0 { abs_gap / scale } else { abs_gap };
        let decisive = match compared {
            GapKind::Absolute => abs_gap,
            GapKind::Relative => rel_gap,
            GapKind::Scaled => abs_gap / (1.0 + scale),
        };
        let mut routes: Vec<Route> = routes.into_iter().collect();
        routes.sort();
        routes.dedup();
        Self {
            identity: identity.to_string(),
            parameters,
            lhs: to_f64_value(&lhs),
            rhs: to_f64_value(&rhs),
            abs_gap,
            rel_gap,
            compared,
            tolerance,
            pass: decisive < tolerance,
            routes,
        }
    }

    /// The gap that decided `pass`.
    pub fn decisive_gap(&self) -> f64 {
        match self.compared {
            GapKind::Absolute => self.abs_gap,
            GapKind::Relative => self.rel_gap,
            GapKind::Scaled => self.abs_gap / (1.0 + self.rhs.abs()),
        }
    }
}

fn to_f64_value<T: Real>(v: &ComplexValue<T>) -> ComplexValue<f64> {
    let (re, im, err) = v.to_f64();
    ComplexValue::new(Complex::new(re, im), err)
}

fn exact<T: Real>(r: &Rational) -> ComplexValue<T> {
    ComplexValue::real(T::from_rational(r))
}

/// A named list of reports; passes iff every report does (vacuously when empty).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub pass: bool,
    pub reports: Vec<Report>,
}

impl SuiteReport {
    pub fn new(suite: &str, reports: Vec<Report>) -> Self {
        let pass = reports.iter().all(|r| r.pass);
        Self { suite: suite.to_string(), pass, reports }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Report> {
        self.reports.iter().filter(|r| !r.pass)
    }

    /// Largest deciding gap, 0 for an empty suite.
    pub fn worst_gap(&self) -> f64 {
        self.reports.iter().map(Report::decisive_gap).fold(0.0, f64::max)
    }
}

/// `Σ_Q ζ_[Q](1−k) = ζ(1−k) H(k, D)` with the left side from quadrature of
/// `G_{2k}`, compared relatively at `cfg.tol`.
pub fn verify_siegel<T: Real>(k: u32, d: i64, cfg: &EvaluationConfig) -> Result<Report> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("Siegel's identity needs k >= 2, got {k}")));
    }
    let g = eisenstein_g(2 * k as i64, cfg.truncation)?;
    let p = PreparedForm::<T>::new(&g, cfg)?;
    let sign = if k.is_multiple_of(2) { T::one() } else { -T::one() };
    let mut lhs = ComplexValue::zero();
    let classes = class_representatives(d)?;
    for q in &classes {
        lhs = lhs + quadrature_prepared(&p, q)?.value.scale(sign + sign);
    }
    let rhs = zeta_neg(k) * cohen_h(k, d)?;
    Ok(Report::compare(
        "siegel",
        json!({ "k": k, "D": d, "classes": classes.len() }),
        lhs,
        exact::<T>(&rhs),
        cfg.tol,
        GapKind::Relative,
        [Route::Quadrature],
    ))
}

/// `Shin_1(G_{2k}) = ½ ζ(1−k) H_k` coefficientwise for even `k`. Square
/// indices, which go through the finite-part route, are held to `10·cfg.tol`.
pub fn verify_eisenstein_lift<T: Real>(k: u32, m_max: i64, cfg: &EvaluationConfig) -> Result<SuiteReport> {
    if k < 2 || !k.is_multiple_of(2) {
        return Err(Error::InvalidDelta { delta: 1, k: k as i64 });
    }
    let g = eisenstein_g(2 * k as i64, cfg.truncation)?;
    let lift = shintani_lift::<T>(&g, k, FundamentalDiscriminant::one(), m_max, cfg)?;
    let half_zeta = zeta_neg(k) / Rational::from_integer(2.into());
    let mut reports = Vec::new();
    for (&m, c) in &lift.coefficients {
        let square = is_square(m);
        let rhs = &half_zeta * cohen_h(k, m)?;
        let tol = if square { 10.0 * cfg.tol } else { cfg.tol };
        reports.push(Report::compare(
            "eisenstein_lift",
            json!({ "k": k, "m": m, "square": square }),
            c.value,
            exact::<T>(&rhs),
            tol,
            GapKind::Absolute,
            c.routes.iter().copied(),
        ));
    }
    Ok(SuiteReport::new("eisenstein-lift", reports))
}

fn is_square(m: i64) -> bool {
    m >= 0 && {
        let r = (m as f64).sqrt().round() as i64;
        r * r == m
    }
}

/// `|C(bol(f_{2−2k,m}, k); Q)|` over every class of each discriminant, by
/// quadrature for non-square discriminants.
pub fn verify_corollary<T: Real>(k: u32, ms: &[i64], ds: &[i64], cfg: &EvaluationConfig) -> Result<SuiteReport> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("the corollary needs k >= 2, got {k}")));
    }
    let mut reports = Vec::new();
    for &m in ms {
        let f = weakly_basis(2 - 2 * k as i64, m, cfg.truncation)?;
        let b = bol(&f, k as i64)?;
        let p = PreparedForm::<T>::new(&b, cfg)?;
        for &d in ds {
            for q in class_representatives(d)? {
                let c = if q.is_square_discriminant() {
                    cycle_integral_prepared(&p, &q)?
                } else {
                    quadrature_prepared(&p, &q)?
                };
                reports.push(Report::compare(
                    "corollary",
                    json!({ "k": k, "m": m, "D": d, "Q": q }),
                    c.value,
                    ComplexValue::zero(),
                    cfg.tol,
                    GapKind::Absolute,
                    [c.route],
                ));
            }
        }
    }
    Ok(SuiteReport::new("corollary", reports))
}

/// The lift of `f_{2k,m}` vanishes at every admissible index up to `m_max`
/// when the relevant cusp form space is trivial. Uses `δ = 1` for even `k`
/// and `δ = −3` for odd `k`.
pub fn verify_vanishing<T: Real>(k: u32, basis: &[i64], m_max: i64, cfg: &EvaluationConfig) -> Result<SuiteReport> {
    let delta = default_delta(k);
    let mut reports = Vec::new();
    for &n in basis {
        let f = weakly_basis(2 * k as i64, n, cfg.truncation)?;
        let lift = shintani_lift::<T>(&f, k, delta, m_max, cfg)?;
        for (&m, c) in &lift.coefficients {
            reports.push(Report::compare(
                "vanishing",
                json!({ "k": k, "basis": n, "delta": delta.value(), "m": m }),
                c.value,
                ComplexValue::zero(),
                cfg.tol,
                GapKind::Absolute,
                c.routes.iter().copied(),
            ));
        }
    }
    Ok(SuiteReport::new("vanishing", reports))
}

/// Quadrature against periods for a cusp-type form, class by class.
pub fn verify_two_route<T: Real>(f: &QSeries, label: &str, ds: &[i64], cfg: &EvaluationConfig) -> Result<SuiteReport> {
    let p = PreparedForm::<T>::new(f, cfg)?;
    if !p.is_cuspidal() {
        return Err(Error::ConstantTermPresent);
    }
    let periods = p.periods()?;
    let mut reports = Vec::new();
    for &d in ds {
        for q in class_representatives(d)? {
            let a = quadrature_prepared(&p, &q)?;
            let b = periods_prepared(&p, &periods, &q)?;
            reports.push(Report::compare(
                "two_route",
                json!({ "f": label, "k": p.k(), "D": d, "Q": q }),
                a.value,
                b.value,
                cfg.tol,
                GapKind::Relative,
                [Route::Quadrature, Route::Periods],
            ));
        }
    }
    Ok(SuiteReport::new("two-route", reports))
}

/// `i^{−n+1} r_n = (−1)^{n+1} i^{−(2k−2−n)+1} r_{2k−2−n}`, relative to the
/// largest period.
pub fn verify_period_symmetry<T: Real>(f: &QSeries, label: &str, cfg: &EvaluationConfig) -> Result<Report> {
    let p = PreparedForm::<T>::new(f, cfg)?;
    let periods = p.periods()?;
    let defect = periods.symmetry_defect();
    Ok(Report::compare(
        "period_symmetry",
        json!({ "f": label, "k": p.k() }),
        ComplexValue::real(T::from_f64_lossy(defect)),
        ComplexValue::<T>::zero(),
        cfg.tol,
        GapKind::Absolute,
        [Route::Periods],
    ))
}

/// `L*_f(ζ_c^d, s)` at each `t0` against its value at the first one.
pub fn verify_t0_independence<T: Real>(
    f: &QSeries,
    label: &str,
    (c, d): (i64, i64),
    s: i64,
    t0s: &[f64],
    cfg: &EvaluationConfig,
) -> Result<SuiteReport> {
    let Some((&first, rest)) = t0s.split_first() else {
        return Ok(SuiteReport::new("t0-independence", Vec::new()));
    };
    let base = lstar::<T>(f, c, d, T::from_f64_lossy(first), s, cfg)?;
    let mut reports = Vec::new();
    for &t in rest {
        let v = lstar::<T>(f, c, d, T::from_f64_lossy(t), s, cfg)?;
        reports.push(Report::compare(
            "t0_independence",
            json!({ "f": label, "c": c, "d": d, "s": s, "t0": t, "reference_t0": first }),
            v,
            base,
            cfg.tol,
            GapKind::Scaled,
            [Route::Lstar],
        ));
    }
    Ok(SuiteReport::new("t0-independence", reports))
}

/// Extra base points for the non-square check, and splitting-point factors
/// (relative to `1/s'`) for the square one.
const Z0_POINTS: [(f64, f64); 3] = [(0.3, 1.2), (-0.45, 0.9), (0.1, 2.0)];
const T0_FACTORS: [f64; 3] = [0.7, 1.3, 1.9];

/// Cycle integrals do not depend on the base point `z0`; for square
/// discriminants the regularized integral does not depend on the splitting
/// point of the L* path.
pub fn verify_z0_independence<T: Real>(
    f: &QSeries,
    label: &str,
    ds: &[i64],
    cfg: &EvaluationConfig,
) -> Result<SuiteReport> {
    let p = PreparedForm::<T>::new(f, cfg)?;
    let mut reports = Vec::new();
    for &d in ds {
        for q in class_representatives(d)? {
            if q.is_square_discriminant() {
                let (_, sp, _) = square_parameters(&q)?;
                let base = square_prepared(&p, &q, None)?;
                for factor in T0_FACTORS {
                    let t0 = T::from_f64_lossy(factor) / T::from_int(sp);
                    let v = square_prepared(&p, &q, Some(t0))?;
                    reports.push(Report::compare(
                        "z0_independence",
                        json!({ "f": label, "D": d, "Q": q, "t0_factor": factor }),
                        v.value,
                        base.value,
                        cfg.tol,
                        GapKind::Scaled,
                        [base.route],
                    ));
                }
            } else {
                let base = cycle_integral_quadrature_at(f, &q, Complex::new(T::zero(), T::one()), cfg)?;
                for (x, y) in Z0_POINTS {
                    let z0 = Complex::new(T::from_f64_lossy(x), T::from_f64_lossy(y));
                    let v = cycle_integral_quadrature_at(f, &q, z0, cfg)?;
                    reports.push(Report::compare(
                        "z0_independence",
                        json!({ "f": label, "D": d, "Q": q, "z0": [x, y] }),
                        v,
                        base,
                        cfg.tol,
                        GapKind::Scaled,
                        [Route::Quadrature],
                    ));
                }
            }
        }
    }
    Ok(SuiteReport::new("z0-independence", reports))
}

/// `f(−1/z) = z^w f(z)` at `points` seeded random `z` with `|Re z| ≤ 1/2`
/// and `0.8 ≤ Im z ≤ 1.6`.
pub fn verify_modularity<T: Real>(
    f: &QSeries,
    label: &str,
    points: usize,
    seed: u64,
    cfg: &EvaluationConfig,
) -> Result<SuiteReport> {
    let w = f.weight().ok_or(Error::MissingWeight)?;
    let series = NumericSeries::<T>::from_qseries(f, cfg.truncation.min(f.truncation()))?;
    let mut rng = StdRng::seed_from_u64(seed);
    let mut reports = Vec::new();
    for _ in 0..points {
        let (x, y) = (rng.gen_range(-0.5..0.5), rng.gen_range(0.8..1.6));
        let z = Complex::new(T::from_f64_lossy(x), T::from_f64_lossy(y));
        let lhs = series.eval(-z.inv())?;
        let rhs = series.eval(z)?.mul_complex(crate::analytic::series::complex_powi(z, w));
        reports.push(Report::compare(
            "modularity",
            json!({ "f": label, "weight": w, "z": [x, y] }),
            lhs,
            rhs,
            cfg.tol,
            GapKind::Scaled,
            [],
        ));
    }
    Ok(SuiteReport::new("modularity", reports))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::delta as delta_form;
    use crate::scalar::DoubleDouble;
    use num_traits::Zero;

    type D = DoubleDouble;

    fn cfg() -> EvaluationConfig {
        EvaluationConfig::default().with_tol(1e-6)
    }

    fn fd(d: i64) -> FundamentalDiscriminant {
        FundamentalDiscriminant::new(d).unwrap()
    }

    #[test]
    fn zero_form_traces_to_zero() {
        let z = QSeries::zero(100, Some(4));
        let t = trace::<D>(&z, 2, fd(1), 5, &cfg()).unwrap();
        assert!(t.value.abs().is_zero());
        let lift = shintani_lift::<D>(&z, 2, fd(1), 12, &cfg()).unwrap();
        assert_eq!(lift.coefficients.keys().copied().collect::<Vec<_>>(), vec![1, 4, 5, 8, 9, 12]);
        assert_eq!(lift.max_abs(), 0.0);
    }

    #[test]
    fn admissibility_errors() {
        let g = eisenstein_g(4, 100).unwrap();
        assert_eq!(trace::<f64>(&g, 2, fd(1), 3, &cfg()).unwrap_err(), Error::InvalidIndex { m: 3, k: 2 });
        assert_eq!(trace::<f64>(&g, 2, fd(-3), 5, &cfg()).unwrap_err(), Error::InvalidDelta { delta: -3, k: 2 });
        assert!(matches!(trace::<f64>(&g, 3, fd(1), 5, &cfg()), Err(Error::WeightMismatch { .. })));
    }

    #[test]
    fn eisenstein_trace_at_five() {
        let g = eisenstein_g(4, 200).unwrap();
        let t = trace::<D>(&g, 2, fd(1), 5, &cfg()).unwrap();
        let expected = f64::from_rational(&(zeta_neg(2) * cohen_h(2, 5).unwrap())) / 2.0;
        assert!((t.value.re().to_f64_lossy() - expected).abs() < 1e-10);
        assert_eq!(t.routes, BTreeSet::from([Route::Quadrature]));
    }

    #[test]
    fn bol_image_lifts_to_zero() {
        let f = weakly_basis(-2, 1, 400).unwrap();
        let b = bol(&f, 2).unwrap();
        let lift = shintani_lift::<D>(&b, 2, fd(1), 40, &cfg().with_truncation(400)).unwrap();
        for (m, c) in &lift.coefficients {
            assert!(c.value.abs().to_f64_lossy() < 1e-6, "m = {m}: {}", c.value);
        }
        let squares: Vec<_> =
            lift.coefficients.iter().filter(|(_, c)| c.routes.contains(&Route::Lstar)).map(|(m, _)| *m).collect();
        assert_eq!(squares, vec![1, 4, 9, 16, 25, 36]);
    }

    #[test]
    fn reports() {
        let r = Report::compare::<f64>(
            "x",
            json!({}),
            ComplexValue::real(1.0 + 1e-9),
            ComplexValue::real(1.0),
            1e-8,
            GapKind::Relative,
            [Route::Periods, Route::Quadrature, Route::Periods],
        );
        assert!(r.pass);
        assert_eq!(r.routes, vec![Route::Quadrature, Route::Periods]);
        let v = serde_json::to_value(&r).unwrap();
        for key in ["identity", "parameters", "lhs", "rhs", "abs_gap", "rel_gap", "pass", "routes"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert!(SuiteReport::new("empty", vec![]).pass);
    }

    #[test]
    fn siegel_small_cases() {
        for (k, d) in [(2, 5), (2, 8), (4, 5)] {
            let r = verify_siegel::<D>(k, d, &cfg()).unwrap();
            assert!(r.pass, "{r:?}");
            assert!(r.lhs.im().abs() < 1e-8);
        }
    }

    #[test]
    fn corollary_and_vanishing_small() {
        let c = verify_corollary::<D>(2, &[1], &[5, 8], &cfg()).unwrap();
        assert!(c.pass && c.reports.len() == 2, "{c:?}");
        let v = verify_vanishing::<D>(3, &[1], 8, &cfg()).unwrap();
        assert!(v.pass, "{v:?}");
        assert!(verify_corollary::<D>(2, &[], &[5], &cfg()).unwrap().reports.is_empty());
    }

    #[test]
    fn property_suites_for_delta() {
        let d = delta_form(200);
        assert!(verify_period_symmetry::<D>(&d, "Delta", &cfg()).unwrap().pass);
        assert!(verify_t0_independence::<D>(&d, "Delta", (5, 2), 6, &[1.0, 0.6, 1.7], &cfg()).unwrap().pass);
        assert!(verify_z0_independence::<D>(&d, "Delta", &[5, 9], &cfg()).unwrap().pass);
        let m = verify_modularity::<D>(&d, "Delta", 5, 3, &cfg()).unwrap();
        assert!(m.pass && m.reports.len() == 5);
    }
}
