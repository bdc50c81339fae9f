//! Integral binary quadratic forms of positive discriminant.

mod genus;
mod polynomial;
mod reduce;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

pub use genus::genus_char;
pub use polynomial::{cycle_polynomial, CyclePolynomial};
pub use reduce::{class_representatives, cycle, pell, reduce, reduced_forms, ReductionCycle};

/// `Q(X, Y) = aX² + bXY + cY²`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadraticForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl QuadraticForm {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Self {
        Self { a: a.into(), b: b.into(), c: c.into() }
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    /// `Some(s)` with `s ≥ 0` when the discriminant is a perfect square.
    pub fn square_root_discriminant(&self) -> Option<BigInt> {
        exact_sqrt(&self.discriminant())
    }

    pub fn is_square_discriminant(&self) -> bool {
        self.square_root_discriminant().is_some()
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.a * x * x + &self.b * x * y + &self.c * y * y
    }

    /// `gcd(a, b, c)`.
    pub fn content(&self) -> BigInt {
        self.a.gcd(&self.b).gcd(&self.c)
    }

    /// `Q ∘ M (x, y) = Q(αx + βy, γx + δy)` for `M = [[α, β], [γ, δ]]`.
    pub fn compose(&self, m: &Matrix2) -> Self {
        let two = BigInt::from(2);
        let a = self.eval(&m.a, &m.c);
        let c = self.eval(&m.b, &m.d);
        let b = &two * &self.a * &m.a * &m.b + &self.b * (&m.a * &m.d + &m.b * &m.c) + &two * &self.c * &m.c * &m.d;
        Self { a, b, c }
    }

    /// Zagier reduced: `a > 0`, `c > 0` and `b > a + c`.
    pub fn is_reduced(&self) -> bool {
        self.a.is_positive() && self.c.is_positive() && self.b > &self.a + &self.c
    }

    /// Coefficients of `Q(X, -1) = aX² − bX + c`, constant term first.
    pub fn dehomogenized(&self) -> [BigInt; 3] {
        [self.c.clone(), -self.b.clone(), self.a.clone()]
    }

    /// The automorph `[[(t+bu)/2, cu], [-au, (t-bu)/2]]` built from the
    /// minimal solution of `t² − Du² = 4`; the identity for square
    /// discriminants.
    pub fn automorph(&self) -> crate::Result<Automorph> {
        let d = self.discriminant();
        if !d.is_positive() {
            return Err(crate::Error::NonPositiveDiscriminant(d.to_string()));
        }
        if self.is_square_discriminant() {
            return Ok(Matrix2::identity());
        }
        let (t, u) = pell(&d)?;
        let two = BigInt::from(2);
        Ok(Matrix2::new((&t + &self.b * &u) / &two, &self.c * &u, -(&self.a * &u), (&t - &self.b * &u) / &two))
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{}]", self.a, self.b, self.c)
    }
}

impl std::str::FromStr for QuadraticForm {
    type Err = crate::Error;

    /// Parses `[a,b,c]` or `a,b,c`.
    fn from_str(s: &str) -> crate::Result<Self> {
        let t = s.trim().trim_start_matches('[').trim_end_matches(']');
        let parts: Vec<_> = t.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(crate::Error::Parse(format!("expected a form [a,b,c], got {s:?}")));
        }
        let p = |x: &str| x.parse::<BigInt>().map_err(|_| crate::Error::Parse(format!("bad integer {x:?} in {s:?}")));
        Ok(Self { a: p(parts[0])?, b: p(parts[1])?, c: p(parts[2])? })
    }
}

impl Serialize for QuadraticForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("QuadraticForm", 4)?;
        st.serialize_field("a", &JsonInt(&self.a))?;
        st.serialize_field("b", &JsonInt(&self.b))?;
        st.serialize_field("c", &JsonInt(&self.c))?;
        st.serialize_field("D", &JsonInt(&self.discriminant()))?;
        st.end()
    }
}

/// Writes a big integer as a JSON number when it fits in 64 bits and as a
/// decimal string otherwise.
pub(crate) struct JsonInt<'a>(pub &'a BigInt);

impl Serialize for JsonInt<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

/// An integer 2×2 matrix `[[a, b], [c, d]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix2 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

/// An element of the stabilizer of a form.
pub type Automorph = Matrix2;

impl Matrix2 {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        Self { a: a.into(), b: b.into(), c: c.into(), d: d.into() }
    }

    pub fn identity() -> Self {
        Self::new(1, 0, 0, 1)
    }

    /// `M_m = [[m, 1], [-1, 0]]`.
    pub fn step(m: &BigInt) -> Self {
        Self::new(m.clone(), 1, -1, 0)
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.c.is_zero() && self.d.is_one()
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl Serialize for Matrix2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [[JsonInt(&self.a), JsonInt(&self.b)], [JsonInt(&self.c), JsonInt(&self.d)]].serialize(s)
    }
}

pub(crate) fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}
