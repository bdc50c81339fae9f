use num_complex::Complex;
use num_traits::Zero;

use super::ComplexValue;
use crate::error::Result;
use crate::scalar::Real;

/// Longest piece a segment is cut into before Gauss–Legendre is applied.
const MAX_PIECE: f64 = 0.25;

/// Gauss–Legendre nodes and weights on `[−1, 1]`, from Newton iteration on
/// the three-term recurrence.
pub fn gauss_legendre<T: Real>(n: usize) -> Vec<(T, T)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        // Tricomi's initial guess
        let guess = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut x = T::from_f64_lossy(guess);
        let mut dp = T::one();
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x = x - dx;
            if dx.abs() <= T::epsilon() * T::from_int(2) {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if !d.is_zero() {
            dp = d;
        }
        let w = T::from_int(2) / ((T::one() - x * x) * dp * dp);
        out.push((x, w));
    }
    out
}

/// `(P_n(x), P_n'(x))`.
fn legendre<T: Real>(n: usize, x: T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = x;
    if n == 0 {
        return (p0, T::zero());
    }
    for j in 2..=n {
        let jj = T::from_int(j as i64);
        let p2 = ((jj + jj - T::one()) * x * p1 - (jj - T::one()) * p0) / jj;
        p0 = p1;
        p1 = p2;
    }
    let nn = T::from_int(n as i64);
    let d = nn * (x * p1 - p0) / (x * x - T::one());
    (p1, d)
}

/// `∫ f(z) dz` along the straight segment from `z1` to `z2`.
///
/// The segment is cut into pieces of length at most 1/4. Each piece is
/// integrated with `degree` and `degree/2` nodes; their difference plus the
/// integrand's own error times the length is the reported error.
pub fn integrate_segment<T, F>(f: F, z1: Complex<T>, z2: Complex<T>, degree: usize) -> Result<ComplexValue<T>>
where
    T: Real,
    F: Fn(Complex<T>) -> Result<ComplexValue<T>>,
{
    SegmentRule::new(degree).integrate(f, z1, z2)
}

/// Precomputed node sets for [`integrate_segment`].
#[derive(Debug, Clone)]
pub(crate) struct SegmentRule<T> {
    degree: usize,
    fine: Vec<(T, T)>,
    coarse: Vec<(T, T)>,
}

impl<T: Real> SegmentRule<T> {
    pub(crate) fn new(degree: usize) -> Self {
        let degree = degree.max(4);
        Self { degree, fine: gauss_legendre(degree), coarse: gauss_legendre(degree / 2) }
    }

    pub(crate) fn integrate<F>(&self, f: F, z1: Complex<T>, z2: Complex<T>) -> Result<ComplexValue<T>>
    where
        F: Fn(Complex<T>) -> Result<ComplexValue<T>>,
    {
        let len = (z2 - z1).norm();
        if len.is_zero() {
            return Ok(ComplexValue::zero());
        }
        let pieces = (len.to_f64_lossy() / MAX_PIECE).ceil().max(1.0) as i64;
        let step = (z2 - z1) / T::from_int(pieces);
        let half = step / T::from_int(2);
        let mut total = ComplexValue::zero();
        for p in 0..pieces {
            let mid = z1 + step * T::from_int(p) + half;
            let rule = |nodes: &[(T, T)]| -> Result<(Complex<T>, T)> {
                let mut s: Complex<T> = Complex::zero();
                let mut e = T::zero();
                for &(x, w) in nodes {
                    let v = f(mid + half * x)?;
                    s = s + v.value * w;
                    e = e + v.err * w;
                }
                Ok((s * half, e * half.norm()))
            };
            let (hi, hi_err) = rule(&self.fine)?;
            let (lo, _) = rule(&self.coarse)?;
            let disc = (hi - lo).norm();
            let round = hi.norm() * T::epsilon() * T::from_int(self.degree as i64);
            total = total + ComplexValue::new(hi, hi_err + disc + round);
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::DoubleDouble;
    use num_traits::Float;

    type D = DoubleDouble;

    #[test]
    fn weights_sum_to_two_and_integrate_polynomials() {
        let rule = gauss_legendre::<D>(20);
        let total: D = rule.iter().map(|p| p.1).sum();
        assert!((total - D::from_f64(2.0)).abs().to_f64_lossy() < 1e-30);
        // ∫ x^38 = 2/39 is exact for 20 nodes
        let m: D = rule.iter().map(|&(x, w)| w * x.powi(38)).sum();
        assert!((m - D::from_f64(2.0) / D::from_f64(39.0)).abs().to_f64_lossy() < 1e-30);
    }

    #[test]
    fn complex_exponential() {
        // ∫_0^{1+i} e^z dz = e^{1+i} − 1
        let z2 = Complex::new(D::ONE, D::ONE);
        let v = integrate_segment(|z: Complex<D>| Ok(ComplexValue::exact(z.exp())), Complex::zero(), z2, 32).unwrap();
        let exact = z2.exp() - Complex::new(D::ONE, D::zero());
        assert!(v.gap(&ComplexValue::exact(exact)).to_f64_lossy() < 1e-28);
        assert!(v.err.to_f64_lossy() < 1e-20);
    }

    #[test]
    fn error_covers_rough_integrand() {
        // a badly resolved integrand must report an error at least as large as its actual error
        let z2 = Complex::new(D::from_f64(1.0), D::zero());
        let f = |z: Complex<D>| Ok(ComplexValue::exact((z * D::from_f64(200.0)).cos()));
        let v: ComplexValue<D> = integrate_segment(f, Complex::zero(), z2, 8).unwrap();
        let exact = D::from_f64(200.0).sin() / D::from_f64(200.0);
        assert!((v.re() - exact).abs() <= v.err);
    }
}
