//! Structural properties of traces and lifts.

use cyclelift::analytic::EvaluationConfig;
use cyclelift::exactmath::{FundamentalDiscriminant, Rational};
use cyclelift::qseries::{cohen_eisenstein, eisenstein_g, weakly_basis, HalfIntegralSeries};
use cyclelift::shintani::{shintani_lift, trace};
use cyclelift::{Real, Working};
use num_traits::Float;

fn cfg() -> EvaluationConfig {
    EvaluationConfig::default().with_truncation(300).with_tol(1e-6)
}

#[test]
fn lift_is_linear() {
    let one = FundamentalDiscriminant::one();
    let f = weakly_basis(4, 1, 300).unwrap();
    let g = weakly_basis(4, 2, 300).unwrap();
    let h = f.scale(&Rational::from_integer(3.into())).sub(&g.scale(&Rational::from_integer(2.into()))).unwrap();
    let lf = shintani_lift::<Working>(&f, 2, one, 13, &cfg()).unwrap();
    let lg = shintani_lift::<Working>(&g, 2, one, 13, &cfg()).unwrap();
    let lh = shintani_lift::<Working>(&h, 2, one, 13, &cfg()).unwrap();
    for (m, c) in &lh.coefficients {
        let expect =
            lf.coefficients[m].value.scale(Working::from_int(3)) - lg.coefficients[m].value.scale(Working::from_int(2));
        let allowed = c.value.err + expect.err + Working::from_f64_lossy(1e-20);
        assert!(c.value.gap(&expect) <= allowed, "m = {m}");
    }
}

#[test]
fn coefficients_are_real_and_supported_on_admissible_indices() {
    let minus3 = FundamentalDiscriminant::new(-3).unwrap();
    let f = weakly_basis(6, 1, 300).unwrap();
    let lift = shintani_lift::<Working>(&f, 3, minus3, 16, &cfg()).unwrap();
    let keys: Vec<i64> = lift.coefficients.keys().copied().collect();
    assert_eq!(keys, (1..=16).filter(|&m| HalfIntegralSeries::admissible(3, m)).collect::<Vec<_>>());
    assert_eq!(keys, vec![3, 4, 7, 8, 11, 12, 15, 16]);
    for (m, c) in &lift.coefficients {
        assert!(c.value.im().abs().to_f64_lossy() < 1e-6, "m = {m}: {}", c.value);
    }
}

#[test]
fn eisenstein_lift_is_a_multiple_of_cohen_series() {
    // ½ζ(−1) = −1/24
    let g = eisenstein_g(4, 300).unwrap();
    let lift = shintani_lift::<Working>(&g, 2, FundamentalDiscriminant::one(), 20, &cfg()).unwrap();
    let h = cohen_eisenstein(2, 20).unwrap();
    for (m, c) in &lift.coefficients {
        let expected = -f64::from_rational(&h.coeff(*m).unwrap()) / 24.0;
        assert!((c.value.re().to_f64_lossy() - expected).abs() < 1e-6, "m = {m}");
    }
}

#[test]
fn trace_of_g4_at_five() {
    let g = eisenstein_g(4, 300).unwrap();
    let t = trace::<Working>(&g, 2, FundamentalDiscriminant::one(), 5, &cfg()).unwrap();
    // ½ · (−1/12) · H(2, 5) with H(2, 5) = −2/5
    assert!((t.value.re().to_f64_lossy() - 1.0 / 60.0).abs() < 1e-12);
    assert_eq!(t.classes, 1);
}
