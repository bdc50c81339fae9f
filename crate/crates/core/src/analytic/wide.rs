//! Multi-precision evaluation of the twisted L*-sum, used when the terms are
//! so large that their cancellation would swamp the working precision.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_complex::Complex;

use super::ComplexValue;
use crate::error::{Error, Result};
use crate::exactmath::Rational;
use crate::scalar::Real;

const RM: RoundingMode = RoundingMode::ToEven;

struct Ctx {
    p: usize,
    cc: Consts,
}

#[derive(Clone)]
struct Cx {
    re: BigFloat,
    im: BigFloat,
}

impl Ctx {
    fn new(p: usize) -> Result<Self> {
        let cc = Consts::new().map_err(|e| Error::InvalidArgument(format!("multi-precision constants: {e:?}")))?;
        Ok(Self { p, cc })
    }

    fn int(&self, n: i64) -> BigFloat {
        BigFloat::from_f64(n as f64, self.p)
    }

    fn rational(&mut self, r: &Rational) -> BigFloat {
        let n = BigFloat::parse(&r.numer().to_string(), Radix::Dec, self.p, RM, &mut self.cc);
        let d = BigFloat::parse(&r.denom().to_string(), Radix::Dec, self.p, RM, &mut self.cc);
        n.div(&d, self.p, RM)
    }

    /// Exact for `f64` and `DoubleDouble` inputs.
    fn real<T: Real>(&self, x: T) -> BigFloat {
        let hi = x.to_f64_lossy();
        let lo = (x - T::from_f64_lossy(hi)).to_f64_lossy();
        BigFloat::from_f64(hi, self.p).add(&BigFloat::from_f64(lo, self.p), self.p, RM)
    }

    fn narrow<T: Real>(&mut self, x: &BigFloat) -> T {
        let hi = to_f64(x, &mut self.cc);
        let rest = x.sub(&BigFloat::from_f64(hi, self.p), self.p, RM);
        T::from_f64_lossy(hi) + T::from_f64_lossy(to_f64(&rest, &mut self.cc))
    }

    /// `e^{2πi r/c}`.
    fn root_of_unity(&mut self, r: i64, c: i64) -> Cx {
        let theta =
            self.cc.pi(self.p, RM).mul(&self.int(2 * r.rem_euclid(c)), self.p, RM).div(&self.int(c), self.p, RM);
        Cx { re: theta.cos(self.p, RM, &mut self.cc), im: theta.sin(self.p, RM, &mut self.cc) }
    }

    /// `U(s, λ, y) = e^{−λy} Σ_{j<s} (s−1)!/j! · y^j / λ^{s−j}` for `s ≥ 1`.
    fn scaled_upper_gamma(&mut self, s: i64, lambda: &BigFloat, y: &BigFloat) -> BigFloat {
        let p = self.p;
        let mut term = y.powi((s - 1) as usize, p, RM).div(lambda, p, RM);
        let mut sum = term.clone();
        let ylam = y.mul(lambda, p, RM);
        for j in (0..s - 1).rev() {
            term = term.mul(&self.int(j + 1), p, RM).div(&ylam, p, RM);
            sum = sum.add(&term, p, RM);
        }
        let e = ylam.neg().exp(p, RM, &mut self.cc);
        sum.mul(&e, p, RM)
    }
}

fn to_f64(x: &BigFloat, cc: &mut Consts) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    x.format(Radix::Dec, RM, cc).ok().and_then(|s| s.parse().ok()).unwrap_or(f64::NAN)
}

/// `Σ a_m (ζ_c^{dm} U(s, 2πm, t₀) + reflect · ζ_c^{−am} U(s₂, 2πm, x))` over
/// `m ≠ 0`, evaluated with `bits` of precision. The returned error covers
/// the rounding of that evaluation only.
#[allow(clippy::too_many_arguments)]
pub(crate) fn twisted_sum<T: Real>(
    terms: &[(i64, Rational)],
    (s, s2): (i64, i64),
    (c, d, a): (i64, i64, i64),
    t0: T,
    x: T,
    reflect: &Rational,
    bits: usize,
) -> Result<ComplexValue<T>> {
    if s < 1 || s2 < 1 {
        return Err(Error::UnsupportedOrder(s.min(s2)));
    }
    let mut ctx = Ctx::new(bits)?;
    let p = bits;
    let (t0b, xb) = (ctx.real(t0), ctx.real(x));
    let refl = ctx.rational(reflect);
    let tau = ctx.cc.pi(p, RM).mul(&ctx.int(2), p, RM);
    let first_roots: Vec<Cx> = (0..c).map(|r| ctx.root_of_unity(d * r, c)).collect();
    let second_roots: Vec<Cx> = (0..c).map(|r| ctx.root_of_unity(-a * r, c)).collect();
    let zero = BigFloat::from_f64(0.0, p);
    let (mut re, mut im) = (zero.clone(), zero.clone());
    let mut magnitude = 0.0f64;
    for (m, am) in terms {
        if *m == 0 {
            continue;
        }
        let coeff = ctx.rational(am);
        let lambda = tau.mul(&ctx.int(*m), p, RM);
        let u1 = ctx.scaled_upper_gamma(s, &lambda, &t0b).mul(&coeff, p, RM);
        let u2 = ctx.scaled_upper_gamma(s2, &lambda, &xb).mul(&coeff, p, RM).mul(&refl, p, RM);
        let r = m.rem_euclid(c) as usize;
        let (z1, z2) = (&first_roots[r], &second_roots[r]);
        re = re.add(&u1.mul(&z1.re, p, RM), p, RM).add(&u2.mul(&z2.re, p, RM), p, RM);
        im = im.add(&u1.mul(&z1.im, p, RM), p, RM).add(&u2.mul(&z2.im, p, RM), p, RM);
        magnitude += to_f64(&u1, &mut ctx.cc).abs() + to_f64(&u2, &mut ctx.cc).abs();
    }
    let value = Complex::new(ctx.narrow::<T>(&re), ctx.narrow::<T>(&im));
    let round =
        magnitude * 2f64.powi(8 - bits as i32) + value.norm().to_f64_lossy() * T::epsilon().to_f64_lossy() * 4.0;
    Ok(ComplexValue::new(value, T::from_f64_lossy(round)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;
    use crate::scalar::DoubleDouble;

    #[test]
    fn matches_a_single_term_by_hand() {
        // a_1 = 1, c = 1, s = s2 = 1: U(1, 2π, y) = e^{−2πy}/(2π)
        let terms = vec![(1, rat(1, 1))];
        let v = twisted_sum::<DoubleDouble>(
            &terms,
            (1, 1),
            (1, 0, 0),
            DoubleDouble::ONE,
            DoubleDouble::ONE,
            &rat(1, 1),
            200,
        )
        .unwrap();
        let tau = std::f64::consts::TAU;
        let expected = 2.0 * (-tau).exp() / tau;
        assert!((v.re().to_f64_lossy() - expected).abs() < 1e-18);
        assert!(v.err.to_f64_lossy() < 1e-30);
    }
}
