//! Exact q-expansions with a finite principal part.

mod forms;
mod half;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactmath::Rational;

pub use forms::{
    bol, delta, eisenstein_e, eisenstein_g, j_function, weakly_basis, weakly_basis_pivot, DEFAULT_TRUNCATION,
};
pub use half::{cohen_eisenstein, HalfIntegralSeries};

/// A truncated Laurent series `Σ_{n ≥ v} a_n q^n + O(q^{N+1})` with exact
/// rational coefficients.
///
/// Coefficients are known for every exponent `n ≤ truncation`; asking for a
/// higher one is an error. The leading stored coefficient is non-zero unless
/// the series is identically zero up to its truncation, in which case
/// `valuation = truncation + 1` and no coefficients are stored.
#[derive(Clone, PartialEq, Eq)]
pub struct QSeries {
    valuation: i64,
    truncation: i64,
    coeffs: Vec<Rational>,
    weight: Option<i64>,
}

impl QSeries {
    /// Builds a series from the coefficients of `q^valuation, q^{valuation+1}, …`.
    /// Missing coefficients up to `truncation` are zero; extra ones are dropped.
    pub fn new(valuation: i64, mut coeffs: Vec<Rational>, truncation: i64, weight: Option<i64>) -> Self {
        let len = (truncation - valuation + 1).max(0) as usize;
        coeffs.resize(len, Rational::zero());
        let mut s = Self { valuation, truncation, coeffs, weight };
        s.normalize();
        s
    }

    pub fn from_integers(valuation: i64, coeffs: &[i64], truncation: i64, weight: Option<i64>) -> Self {
        let coeffs = coeffs.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect();
        Self::new(valuation, coeffs, truncation, weight)
    }

    pub fn from_map(map: &BTreeMap<i64, Rational>, truncation: i64, weight: Option<i64>) -> Self {
        let Some((&v, _)) = map.iter().next() else {
            return Self::zero(truncation, weight);
        };
        let mut coeffs = vec![Rational::zero(); (truncation - v + 1).max(0) as usize];
        for (&n, c) in map.range(..=truncation) {
            coeffs[(n - v) as usize] = c.clone();
        }
        Self::new(v, coeffs, truncation, weight)
    }

    pub fn zero(truncation: i64, weight: Option<i64>) -> Self {
        Self { valuation: truncation + 1, truncation, coeffs: Vec::new(), weight }
    }

    /// The constant `c + O(q^{N+1})`.
    pub fn constant(c: Rational, truncation: i64, weight: Option<i64>) -> Self {
        Self::new(0, vec![c], truncation, weight)
    }

    /// `c q^n + O(q^{N+1})`.
    pub fn monomial(c: Rational, n: i64, truncation: i64, weight: Option<i64>) -> Self {
        Self::new(n, vec![c], truncation, weight)
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.valuation += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.valuation = self.truncation + 1;
        }
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn truncation(&self) -> i64 {
        self.truncation
    }

    pub fn weight(&self) -> Option<i64> {
        self.weight
    }

    pub fn with_weight(mut self, weight: Option<i64>) -> Self {
        self.weight = weight;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `q^n`.
    pub fn coeff(&self, n: i64) -> Result<Rational> {
        if n > self.truncation {
            return Err(Error::TruncationExceeded { requested: n, truncation: self.truncation });
        }
        if n < self.valuation {
            return Ok(Rational::zero());
        }
        Ok(self.coeffs[(n - self.valuation) as usize].clone())
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(0).unwrap_or_else(|_| Rational::zero())
    }

    /// Non-zero coefficients in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        let v = self.valuation;
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, c)| (v + i as i64, c))
    }

    /// Principal part `Σ_{n<0} a_n q^n` as `(n, a_n)` pairs.
    pub fn principal_part(&self) -> Vec<(i64, Rational)> {
        self.terms().take_while(|(n, _)| *n < 0).map(|(n, c)| (n, c.clone())).collect()
    }

    /// Restricts the known range to exponents `≤ n`.
    pub fn truncate(&self, n: i64) -> Self {
        let n = n.min(self.truncation);
        let keep = (n - self.valuation + 1).max(0) as usize;
        let coeffs = self.coeffs.iter().take(keep).cloned().collect();
        Self::new(self.valuation.min(n + 1), coeffs, n, self.weight)
    }

    fn combine_weight(a: Option<i64>, b: Option<i64>) -> Result<Option<i64>> {
        match (a, b) {
            (Some(x), Some(y)) if x != y => Err(Error::WeightMismatch { expected: x, found: y }),
            (Some(x), _) | (_, Some(x)) => Ok(Some(x)),
            _ => Ok(None),
        }
    }

    fn add_scaled(&self, other: &Self, sign: i8) -> Result<Self> {
        let weight = Self::combine_weight(self.weight, other.weight)?;
        let n = self.truncation.min(other.truncation);
        let v = self.valuation.min(other.valuation).min(n + 1);
        let mut coeffs = vec![Rational::zero(); (n - v + 1).max(0) as usize];
        for (e, c) in self.terms().take_while(|(e, _)| *e <= n) {
            coeffs[(e - v) as usize] += c;
        }
        for (e, c) in other.terms().take_while(|(e, _)| *e <= n) {
            if sign > 0 {
                coeffs[(e - v) as usize] += c;
            } else {
                coeffs[(e - v) as usize] -= c;
            }
        }
        Ok(Self::new(v, coeffs, n, weight))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.add_scaled(other, 1)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add_scaled(other, -1)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a * c).collect();
        Self::new(self.valuation, coeffs, self.truncation, self.weight)
    }

    /// Product; the result is known up to `min(N_a + v_b, N_b + v_a)`.
    pub fn mul(&self, other: &Self) -> Self {
        let weight = match (self.weight, other.weight) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        let n = (self.truncation + other.valuation).min(other.truncation + self.valuation);
        if self.is_zero() || other.is_zero() {
            return Self::zero(n, weight);
        }
        let v = self.valuation + other.valuation;
        let len = (n - v + 1).max(0) as usize;
        let (ia, da) = clear_denominators(&self.coeffs);
        let (ib, db) = clear_denominators(&other.coeffs);
        let mut out = vec![BigInt::zero(); len];
        for (i, x) in ia.iter().enumerate().take(len) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in ib.iter().enumerate().take(len - i) {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        let den = da * db;
        let coeffs = out.into_iter().map(|c| Rational::new(c, den.clone())).collect();
        Self::new(v, coeffs, n, weight)
    }

    /// Multiplicative inverse; known up to `N - 2v`.
    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NotInvertible);
        }
        let v = self.valuation;
        let n = self.truncation - 2 * v;
        let len = (self.truncation - v + 1) as usize;
        let c0_inv = self.coeffs[0].recip();
        let mut b: Vec<Rational> = Vec::with_capacity(len);
        b.push(c0_inv.clone());
        for i in 1..len {
            let mut acc = Rational::zero();
            for j in 1..=i {
                let a = &self.coeffs[j];
                if !a.is_zero() {
                    acc += a * &b[i - j];
                }
            }
            b.push(-acc * &c0_inv);
        }
        Ok(Self::new(-v, b, n, self.weight.map(|w| -w)))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.invert()?.pow(-e);
        }
        if e == 0 {
            let n = self.truncation - self.valuation;
            return Ok(Self::constant(Rational::one(), n, self.weight.map(|_| 0)));
        }
        let mut result: Option<Self> = None;
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = Some(match result {
                    Some(r) => r.mul(&base),
                    None => base.clone(),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(result.expect("positive exponent"))
    }

    /// Applies `a_n ↦ φ(n) a_n`.
    pub fn map_coefficients(&self, f: impl Fn(i64, &Rational) -> Rational, weight: Option<i64>) -> Self {
        let coeffs = self.coeffs.iter().enumerate().map(|(i, c)| f(self.valuation + i as i64, c)).collect();
        Self::new(self.valuation, coeffs, self.truncation, weight)
    }

    /// `(q d/dq)^r`, i.e. `a_n ↦ n^r a_n`.
    pub fn theta_power(&self, r: u32, weight: Option<i64>) -> Self {
        self.map_coefficients(|n, c| c * Rational::from_integer(BigInt::from(n).pow(r)), weight)
    }
}

fn clear_denominators(c: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let l = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints = c.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    (ints, l)
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let shown = f.precision().unwrap_or(8);
        for (n, c) in self.terms().take(shown) {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag.is_one();
            match n {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !unit {
                        write!(f, "{mag}*")?;
                    }
                    if n == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{n}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.truncation + 1)
    }
}

#[derive(Serialize, Deserialize)]
struct QSeriesRepr {
    weight: Option<i64>,
    valuation: i64,
    truncation: i64,
    coefficients: BTreeMap<i64, String>,
}

impl Serialize for QSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coefficients = self.terms().map(|(n, c)| (n, c.to_string())).collect();
        QSeriesRepr { weight: self.weight, valuation: self.valuation, truncation: self.truncation, coefficients }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = QSeriesRepr::deserialize(d)?;
        let mut map = BTreeMap::new();
        for (n, c) in repr.coefficients {
            if n < repr.valuation || n > repr.truncation {
                return Err(D::Error::custom(format!("exponent {n} outside [valuation, truncation]")));
            }
            let c: Rational = c.parse().map_err(|e| D::Error::custom(format!("bad rational {c:?}: {e}")))?;
            map.insert(n, c);
        }
        Ok(Self::from_map(&map, repr.truncation, repr.weight))
    }
}
