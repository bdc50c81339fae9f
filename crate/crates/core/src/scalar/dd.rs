//! Double-double floating point: an unevaluated sum `hi + lo` of two `f64`
//! with `|lo| <= ulp(hi) / 2`, giving roughly 106 bits of significand.
//!
//! Arithmetic follows the classical error-free transformations (Knuth's
//! two-sum, Dekker's product). The elementary functions use argument
//! reduction followed by a Taylor series or a single Newton step from the
//! `f64` result, and are accurate to a few units in the last place.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::num::FpCategory;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, RemAssign, Sub, SubAssign};
use std::str::FromStr;

use num_traits::{Float, FromPrimitive, Num, NumCast, One, ToPrimitive, Zero};

/// A double-double number `hi + lo`.
#[derive(Clone, Copy, Default, PartialEq)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

const SPLITTER: f64 = 134_217_729.0; // 2^27 + 1
const SPLIT_THRESH: f64 = 6.696_928_794_914_17e299; // 2^996

#[inline]
fn split(a: f64) -> (f64, f64) {
    if a.abs() > SPLIT_THRESH {
        let a = a * 3.725_290_298_461_914e-9; // 2^-28
        let t = SPLITTER * a;
        let hi = t - (t - a);
        let lo = a - hi;
        (hi * 268_435_456.0, lo * 268_435_456.0)
    } else {
        let t = SPLITTER * a;
        let hi = t - (t - a);
        (hi, a - hi)
    }
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    let err = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
    (p, err)
}

impl DoubleDouble {
    pub const ZERO: Self = Self::from_parts(0.0, 0.0);
    pub const ONE: Self = Self::from_parts(1.0, 0.0);
    pub const PI: Self = Self::from_parts(3.141592653589793, 1.2246467991473532e-16);
    pub const TAU: Self = Self::from_parts(6.283185307179586, 2.4492935982947064e-16);
    pub const FRAC_PI_2: Self = Self::from_parts(1.5707963267948966, 6.123233995736766e-17);
    pub const LN_2: Self = Self::from_parts(0.6931471805599453, 2.3190468138462996e-17);
    pub const LN_10: Self = Self::from_parts(2.302585092994046, -2.1707562233822494e-16);
    pub const E: Self = Self::from_parts(2.718281828459045, 1.4456468917292502e-16);
    pub const EULER_GAMMA: Self = Self::from_parts(0.5772156649015329, -4.942915152430645e-18);
    /// 2^-104.
    pub const EPSILON: Self = Self::from_parts(4.930380657631324e-32, 0.0);

    /// Builds a value from parts that are already normalized.
    pub const fn from_parts(hi: f64, lo: f64) -> Self {
        Self { hi, lo }
    }

    pub const fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    /// Normalizes an arbitrary pair into canonical form.
    pub fn new(hi: f64, lo: f64) -> Self {
        let (hi, lo) = two_sum(hi, lo);
        Self { hi, lo }
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    #[inline]
    fn add_f64(self, b: f64) -> Self {
        let (s1, s2) = two_sum(self.hi, b);
        let s2 = s2 + self.lo;
        let (hi, lo) = quick_two_sum(s1, s2);
        Self { hi, lo }
    }

    #[inline]
    fn mul_f64(self, b: f64) -> Self {
        let (p1, p2) = two_prod(self.hi, b);
        let p2 = p2 + self.lo * b;
        let (hi, lo) = quick_two_sum(p1, p2);
        Self { hi, lo }
    }

    #[inline]
    fn sqr(self) -> Self {
        let (p1, p2) = two_prod(self.hi, self.hi);
        let p2 = p2 + 2.0 * self.hi * self.lo + self.lo * self.lo;
        let (hi, lo) = quick_two_sum(p1, p2);
        Self { hi, lo }
    }

    fn ldexp(self, e: i32) -> Self {
        let f = 2f64.powi(e);
        Self { hi: self.hi * f, lo: self.lo * f }
    }

    fn is_special(self) -> bool {
        !self.hi.is_finite()
    }

    fn exp_impl(self) -> Self {
        if self.is_special() {
            return Self::from_f64(self.hi.exp());
        }
        if self.hi > 709.7 {
            return Self::from_f64(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Self::ZERO;
        }
        if self.hi == 0.0 {
            return Self::ONE;
        }
        // x = k ln2 + r, then r is scaled by 2^-10 so the Taylor series is short.
        let k = (self.hi / Self::LN_2.hi).round();
        let r = (self - Self::LN_2.mul_f64(k)).ldexp(-10);
        let mut term = r;
        let mut sum = r;
        for n in 2..=12 {
            term = term * r / Self::from_f64(n as f64);
            sum += term;
            if term.hi.abs() < 1e-36 {
                break;
            }
        }
        // expm1 doubling: e^{2r} - 1 = (e^r - 1)(e^r - 1 + 2)
        for _ in 0..10 {
            sum = sum.mul_f64(2.0) + sum.sqr();
        }
        (sum + Self::ONE).ldexp(k as i32)
    }

    fn ln_impl(self) -> Self {
        if self.hi <= 0.0 || self.is_special() {
            return Self::from_f64(self.hi.ln());
        }
        if self == Self::ONE {
            return Self::ZERO;
        }
        let x = Self::from_f64(self.hi.ln());
        // Newton on exp(x) = a
        x + self * (-x).exp_impl() - Self::ONE
    }

    /// Returns (sin t, cos t) for |t| <= pi/4.
    fn sin_cos_taylor(t: Self) -> (Self, Self) {
        if t.hi == 0.0 {
            return (Self::ZERO, Self::ONE);
        }
        let t2 = t.sqr();
        let mut term = t;
        let mut s = t;
        let mut n = 1.0;
        loop {
            term = -(term * t2) / Self::from_f64((n + 1.0) * (n + 2.0));
            s += term;
            n += 2.0;
            if term.hi.abs() < 1e-36 || n > 60.0 {
                break;
            }
        }
        let mut term = Self::ONE;
        let mut c = Self::ONE;
        let mut n = 0.0;
        loop {
            term = -(term * t2) / Self::from_f64((n + 1.0) * (n + 2.0));
            c += term;
            n += 2.0;
            if term.hi.abs() < 1e-36 || n > 60.0 {
                break;
            }
        }
        (s, c)
    }

    fn sin_cos_impl(self) -> (Self, Self) {
        if self.is_special() {
            return (Self::from_f64(f64::NAN), Self::from_f64(f64::NAN));
        }
        let z = (self / Self::TAU).round();
        let r = self - Self::TAU * z;
        let q = (r.hi / Self::FRAC_PI_2.hi).round();
        let t = r - Self::FRAC_PI_2.mul_f64(q);
        let (s, c) = Self::sin_cos_taylor(t);
        match (q as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }

    fn atan2_impl(self, x: Self) -> Self {
        let y = self;
        if x.hi == 0.0 && y.hi == 0.0 {
            return Self::from_f64(y.hi.atan2(x.hi));
        }
        if y.is_special() || x.is_special() {
            return Self::from_f64(y.hi.atan2(x.hi));
        }
        let theta = Self::from_f64(y.hi.atan2(x.hi));
        let (s, c) = theta.sin_cos_impl();
        // Newton step for y cos(t) - x sin(t) = 0
        theta + (y * c - x * s) / (x * c + y * s)
    }

    fn floor_impl(self) -> Self {
        let hi = self.hi.floor();
        if hi == self.hi {
            Self::new(hi, self.lo.floor())
        } else {
            Self { hi, lo: 0.0 }
        }
    }

    fn pow10(e: i32) -> Self {
        Self::from_f64(10.0).powi(e)
    }

    /// Decimal digits of `|self|` as (digits, exponent) with `digits.len() == n`.
    fn decimal_digits(self, n: usize) -> (Vec<u8>, i32) {
        let mut x = self.abs();
        let mut e = x.hi.log10().floor() as i32;
        x = if e >= 0 { x / Self::pow10(e) } else { x * Self::pow10(-e) };
        if x.hi >= 10.0 {
            x /= Self::from_f64(10.0);
            e += 1;
        } else if x.hi < 1.0 {
            x *= Self::from_f64(10.0);
            e -= 1;
        }
        let mut digits = Vec::with_capacity(n + 1);
        for _ in 0..=n {
            let d = x.hi.floor().clamp(0.0, 9.0);
            digits.push(d as u8);
            x = (x - Self::from_f64(d)).mul_f64(10.0);
        }
        // round on the extra digit
        if digits[n] >= 5 {
            let mut i = n;
            loop {
                if i == 0 {
                    digits.insert(0, 1);
                    e += 1;
                    break;
                }
                i -= 1;
                if digits[i] == 9 {
                    digits[i] = 0;
                } else {
                    digits[i] += 1;
                    break;
                }
            }
        }
        digits.truncate(n);
        (digits, e)
    }
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }
}

impl From<i64> for DoubleDouble {
    fn from(n: i64) -> Self {
        let hi = n as f64;
        let lo = (n as i128 - hi as i128) as f64;
        Self::new(hi, lo)
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    #[inline]
    fn add(self, b: Self) -> Self {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let s2 = s2 + t1;
        let (s1, s2) = quick_two_sum(s1, s2);
        let s2 = s2 + t2;
        let (hi, lo) = quick_two_sum(s1, s2);
        Self { hi, lo }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    #[inline]
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self { hi: -self.hi, lo: -self.lo }
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    #[inline]
    fn mul(self, b: Self) -> Self {
        let (p1, p2) = two_prod(self.hi, b.hi);
        let p2 = p2 + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p1, p2);
        Self { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        if b.hi == 0.0 || self.is_special() || b.is_special() {
            return Self::from_f64(self.hi / b.hi);
        }
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (q1, q2) = quick_two_sum(q1, q2);
        Self { hi: q1, lo: q2 }.add_f64(q3)
    }
}

impl Rem for DoubleDouble {
    type Output = Self;
    fn rem(self, b: Self) -> Self {
        self - (self / b).trunc() * b
    }
}

macro_rules! assign_ops {
    ($($tr:ident $m:ident $op:tt),*) => {$(
        impl $tr for DoubleDouble {
            #[inline]
            fn $m(&mut self, rhs: Self) {
                *self = *self $op rhs;
            }
        }
    )*};
}
assign_ops!(AddAssign add_assign +, SubAssign sub_assign -, MulAssign mul_assign *,
    DivAssign div_assign /, RemAssign rem_assign %);

impl Sum for DoubleDouble {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |a, b| a + b)
    }
}

impl Product for DoubleDouble {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ONE, |a, b| a * b)
    }
}

impl PartialOrd for DoubleDouble {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            o => o,
        }
    }
}

impl fmt::Debug for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DoubleDouble({:e} + {:e})", self.hi, self.lo)
    }
}

impl fmt::Display for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_special() {
            return write!(f, "{}", self.hi);
        }
        if self.hi == 0.0 {
            return write!(f, "0");
        }
        let n = f.precision().map(|p| p + 1).unwrap_or(32).clamp(1, 34);
        let (digits, e) = self.decimal_digits(n);
        let mut s = String::new();
        if self.hi < 0.0 {
            s.push('-');
        }
        s.push((b'0' + digits[0]) as char);
        if n > 1 {
            s.push('.');
            for d in &digits[1..] {
                s.push((b'0' + d) as char);
            }
        }
        write!(f, "{s}e{e}")
    }
}

impl fmt::LowerExp for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Error returned when parsing a [`DoubleDouble`] fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseDoubleDoubleError;

impl fmt::Display for ParseDoubleDoubleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("invalid double-double literal")
    }
}

impl std::error::Error for ParseDoubleDoubleError {}

impl FromStr for DoubleDouble {
    type Err = ParseDoubleDoubleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "inf" | "+inf" => return Ok(Self::from_f64(f64::INFINITY)),
            "-inf" => return Ok(Self::from_f64(f64::NEG_INFINITY)),
            "NaN" | "nan" => return Ok(Self::from_f64(f64::NAN)),
            _ => {}
        }
        let (mantissa, exp) = match s.find(['e', 'E']) {
            Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| ParseDoubleDoubleError)?),
            None => (s, 0),
        };
        let (neg, mantissa) = match mantissa.as_bytes().first() {
            Some(b'-') => (true, &mantissa[1..]),
            Some(b'+') => (false, &mantissa[1..]),
            _ => (false, mantissa),
        };
        let mut value = Self::ZERO;
        let mut frac_digits = 0i32;
        let mut seen_dot = false;
        let mut any = false;
        for c in mantissa.chars() {
            match c {
                '0'..='9' => {
                    value = value.mul_f64(10.0).add_f64((c as u8 - b'0') as f64);
                    if seen_dot {
                        frac_digits += 1;
                    }
                    any = true;
                }
                '.' if !seen_dot => seen_dot = true,
                '_' => {}
                _ => return Err(ParseDoubleDoubleError),
            }
        }
        if !any {
            return Err(ParseDoubleDoubleError);
        }
        let e = exp - frac_digits;
        if e > 0 {
            value *= Self::pow10(e);
        } else if e < 0 {
            value /= Self::pow10(-e);
        }
        Ok(if neg { -value } else { value })
    }
}

impl Zero for DoubleDouble {
    fn zero() -> Self {
        Self::ZERO
    }
    fn is_zero(&self) -> bool {
        self.hi == 0.0
    }
}

impl One for DoubleDouble {
    fn one() -> Self {
        Self::ONE
    }
}

impl Num for DoubleDouble {
    type FromStrRadixErr = ParseDoubleDoubleError;

    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        if radix != 10 {
            return Err(ParseDoubleDoubleError);
        }
        s.parse()
    }
}

impl ToPrimitive for DoubleDouble {
    fn to_i64(&self) -> Option<i64> {
        let t = self.trunc();
        if !t.hi.is_finite() || t.hi.abs() >= 9.2e18 {
            return None;
        }
        Some(t.hi as i64 + t.lo as i64)
    }
    fn to_u64(&self) -> Option<u64> {
        let t = self.trunc();
        if !t.hi.is_finite() || t.hi < 0.0 || t.hi >= 1.8e19 {
            return None;
        }
        Some((t.hi as i128 + t.lo as i128) as u64)
    }
    fn to_f64(&self) -> Option<f64> {
        Some(self.hi + self.lo)
    }
}

impl NumCast for DoubleDouble {
    fn from<N: ToPrimitive>(n: N) -> Option<Self> {
        if let Some(i) = n.to_i64() {
            if let Some(f) = n.to_f64() {
                if f == i as f64 || f.fract() == 0.0 {
                    return Some(<Self as From<i64>>::from(i));
                }
                return Some(Self::from_f64(f));
            }
        }
        n.to_f64().map(Self::from_f64)
    }
}

impl FromPrimitive for DoubleDouble {
    fn from_i64(n: i64) -> Option<Self> {
        Some(<Self as From<i64>>::from(n))
    }
    fn from_u64(n: u64) -> Option<Self> {
        let hi = n as f64;
        let lo = (n as i128 - hi as i128) as f64;
        Some(Self::new(hi, lo))
    }
    fn from_f64(n: f64) -> Option<Self> {
        Some(Self::from_f64(n))
    }
}

impl Float for DoubleDouble {
    fn nan() -> Self {
        Self::from_f64(f64::NAN)
    }
    fn infinity() -> Self {
        Self::from_f64(f64::INFINITY)
    }
    fn neg_infinity() -> Self {
        Self::from_f64(f64::NEG_INFINITY)
    }
    fn neg_zero() -> Self {
        Self::from_f64(-0.0)
    }
    fn min_value() -> Self {
        Self::from_f64(f64::MIN)
    }
    fn min_positive_value() -> Self {
        Self::from_f64(f64::MIN_POSITIVE)
    }
    fn max_value() -> Self {
        Self::from_f64(f64::MAX)
    }
    fn epsilon() -> Self {
        Self::EPSILON
    }
    fn is_nan(self) -> bool {
        self.hi.is_nan()
    }
    fn is_infinite(self) -> bool {
        self.hi.is_infinite()
    }
    fn is_finite(self) -> bool {
        self.hi.is_finite()
    }
    fn is_normal(self) -> bool {
        self.hi.is_normal()
    }
    fn classify(self) -> FpCategory {
        self.hi.classify()
    }
    fn floor(self) -> Self {
        self.floor_impl()
    }
    fn ceil(self) -> Self {
        -(-self).floor_impl()
    }
    fn round(self) -> Self {
        let f = self.floor_impl();
        let d = self - f;
        match d.partial_cmp(&Self::from_f64(0.5)) {
            Some(Ordering::Less) => f,
            Some(Ordering::Greater) => f + Self::ONE,
            _ => {
                if self.hi < 0.0 {
                    f
                } else {
                    f + Self::ONE
                }
            }
        }
    }
    fn trunc(self) -> Self {
        if self.hi >= 0.0 {
            self.floor()
        } else {
            self.ceil()
        }
    }
    fn fract(self) -> Self {
        self - self.trunc()
    }
    fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }
    fn signum(self) -> Self {
        Self::from_f64(self.hi.signum())
    }
    fn is_sign_positive(self) -> bool {
        self.hi.is_sign_positive()
    }
    fn is_sign_negative(self) -> bool {
        self.hi.is_sign_negative()
    }
    fn mul_add(self, a: Self, b: Self) -> Self {
        self * a + b
    }
    fn recip(self) -> Self {
        Self::ONE / self
    }
    fn powi(self, n: i32) -> Self {
        if n == 0 {
            return Self::ONE;
        }
        let mut base = self;
        let mut e = n.unsigned_abs();
        let mut acc = Self::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }
    fn powf(self, n: Self) -> Self {
        if n.fract().is_zero() && n.abs().hi < 2.0e9 {
            return self.powi(n.hi as i32 + n.lo as i32);
        }
        (n * self.ln()).exp()
    }
    fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return Self::from_f64(self.hi.sqrt());
        }
        let x = 1.0 / self.hi.sqrt();
        let ax = self.hi * x;
        let (p, e) = two_prod(ax, ax);
        let diff = (self - Self::new(p, e)).hi;
        Self::from_f64(ax).add_f64(diff * (x * 0.5))
    }
    fn exp(self) -> Self {
        self.exp_impl()
    }
    fn exp2(self) -> Self {
        (self * Self::LN_2).exp_impl()
    }
    fn ln(self) -> Self {
        self.ln_impl()
    }
    fn log(self, base: Self) -> Self {
        self.ln() / base.ln()
    }
    fn log2(self) -> Self {
        self.ln() / Self::LN_2
    }
    fn log10(self) -> Self {
        self.ln() / Self::LN_10
    }
    fn max(self, other: Self) -> Self {
        if self.is_nan() || other > self {
            other
        } else {
            self
        }
    }
    fn min(self, other: Self) -> Self {
        if self.is_nan() || other < self {
            other
        } else {
            self
        }
    }
    fn abs_sub(self, other: Self) -> Self {
        if self > other {
            self - other
        } else {
            Self::ZERO
        }
    }
    fn cbrt(self) -> Self {
        if self.hi == 0.0 || self.is_special() {
            return self;
        }
        let y = Self::from_f64(self.hi.cbrt());
        // Newton on y^3 = a
        y - (y * y * y - self) / (Self::from_f64(3.0) * y * y)
    }
    fn hypot(self, other: Self) -> Self {
        let (a, b) = (self.abs(), other.abs());
        let (big, small) = if a > b { (a, b) } else { (b, a) };
        if big.is_zero() {
            return Self::ZERO;
        }
        let r = small / big;
        big * (Self::ONE + r * r).sqrt()
    }
    fn sin(self) -> Self {
        self.sin_cos_impl().0
    }
    fn cos(self) -> Self {
        self.sin_cos_impl().1
    }
    fn tan(self) -> Self {
        let (s, c) = self.sin_cos_impl();
        s / c
    }
    fn asin(self) -> Self {
        self.atan2_impl((Self::ONE - self * self).sqrt())
    }
    fn acos(self) -> Self {
        (Self::ONE - self * self).sqrt().atan2_impl(self)
    }
    fn atan(self) -> Self {
        self.atan2_impl(Self::ONE)
    }
    fn atan2(self, other: Self) -> Self {
        self.atan2_impl(other)
    }
    fn sin_cos(self) -> (Self, Self) {
        self.sin_cos_impl()
    }
    fn exp_m1(self) -> Self {
        if self.abs().hi < 1e-5 {
            // short Taylor series avoids cancellation
            let mut term = self;
            let mut sum = self;
            for n in 2..8 {
                term = term * self / Self::from_f64(n as f64);
                sum += term;
            }
            sum
        } else {
            self.exp() - Self::ONE
        }
    }
    fn ln_1p(self) -> Self {
        let y = Self::from_f64(self.hi.ln_1p());
        // Newton on exp(y) = 1 + a
        y + (Self::ONE + self) * (-y).exp() - Self::ONE
    }
    fn sinh(self) -> Self {
        let e = self.exp();
        (e - e.recip()).mul_f64(0.5)
    }
    fn cosh(self) -> Self {
        let e = self.exp();
        (e + e.recip()).mul_f64(0.5)
    }
    fn tanh(self) -> Self {
        let e = self.mul_f64(2.0).exp();
        (e - Self::ONE) / (e + Self::ONE)
    }
    fn asinh(self) -> Self {
        let s = if self.hi < 0.0 { -Self::ONE } else { Self::ONE };
        let a = self.abs();
        s * (a + (a * a + Self::ONE).sqrt()).ln()
    }
    fn acosh(self) -> Self {
        (self + (self * self - Self::ONE).sqrt()).ln()
    }
    fn atanh(self) -> Self {
        ((Self::ONE + self) / (Self::ONE - self)).ln().mul_f64(0.5)
    }
    fn integer_decode(self) -> (u64, i16, i8) {
        self.hi.integer_decode()
    }
}
