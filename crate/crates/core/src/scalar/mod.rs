//! Scalar abstraction for the numerical layer.
//!
//! Every floating computation in the crate is generic over [`Real`], which
//! is implemented for `f64` (53 bits) and [`DoubleDouble`] (106 bits).

mod dd;

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, FromPrimitive, Signed, ToPrimitive, Zero};

pub use dd::{DoubleDouble, ParseDoubleDoubleError};

/// A real floating-point scalar usable throughout the numerical layer.
pub trait Real: Float + FromPrimitive + Debug + Display + LowerExp + Default + Send + Sync + Sum + 'static {
    /// Significand precision in bits.
    const BITS: u32;

    fn pi() -> Self;

    fn tau() -> Self {
        Self::pi() + Self::pi()
    }

    fn euler_gamma() -> Self;

    fn from_int(n: i64) -> Self {
        <Self as FromPrimitive>::from_i64(n).expect("integer conversion")
    }

    fn from_f64_lossy(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("float conversion")
    }

    /// Nearest representable value of a big integer (rounded twice at most).
    fn from_bigint(n: &BigInt) -> Self;

    fn from_rational(r: &BigRational) -> Self {
        if r.is_integer() {
            return Self::from_bigint(r.numer());
        }
        let (num, den) = (r.numer(), r.denom());
        // keep both parts inside the f64 exponent range
        let shift = num.bits().max(den.bits()).saturating_sub(900);
        if shift > 0 {
            let num = num >> shift;
            let den = den >> shift;
            if den.is_zero() {
                return Self::from_bigint(&num) * Self::from_f64_lossy(2f64.powi(shift as i32));
            }
            return Self::from_bigint(&num) / Self::from_bigint(&den);
        }
        Self::from_bigint(num) / Self::from_bigint(den)
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    const BITS: u32 = 53;

    fn pi() -> Self {
        std::f64::consts::PI
    }

    fn euler_gamma() -> Self {
        0.577_215_664_901_532_9
    }

    fn from_bigint(n: &BigInt) -> Self {
        n.to_f64().unwrap_or(if n.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
    }
}

impl Real for DoubleDouble {
    const BITS: u32 = 106;

    fn pi() -> Self {
        DoubleDouble::PI
    }

    fn tau() -> Self {
        DoubleDouble::TAU
    }

    fn euler_gamma() -> Self {
        DoubleDouble::EULER_GAMMA
    }

    fn from_bigint(n: &BigInt) -> Self {
        let hi = n.to_f64().unwrap_or(f64::INFINITY);
        if !hi.is_finite() {
            return DoubleDouble::from_f64(if n.is_negative() { f64::NEG_INFINITY } else { hi });
        }
        let rest = n - BigInt::from_f64(hi).expect("finite float is an integer");
        let lo = rest.to_f64().unwrap_or(0.0);
        DoubleDouble::new(hi, lo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn bigint_conversion_keeps_low_bits() {
        let n = (BigInt::one() << 80u32) + BigInt::from(7);
        let x = DoubleDouble::from_bigint(&n);
        let back = x - DoubleDouble::from_f64_lossy(2f64.powi(80));
        assert_eq!(back.to_f64_lossy(), 7.0);
    }

    #[test]
    fn rational_conversion() {
        let r = BigRational::new(BigInt::from(-691), BigInt::from(2730));
        let x = DoubleDouble::from_rational(&r);
        let err = x * DoubleDouble::from_f64(2730.0) + DoubleDouble::from_f64(691.0);
        assert!(err.abs().to_f64_lossy() < 1e-28);
        assert!((f64::from_rational(&r) + 691.0 / 2730.0).abs() < 1e-16);
    }
}
