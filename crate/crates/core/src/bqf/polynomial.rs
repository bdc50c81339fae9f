use num_bigint::BigInt;
use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{cycle, reduce, JsonInt, QuadraticForm};
use crate::error::{Error, Result};

/// `Σ_j Q_j(X, -1)^{k-1}` over the reduced forms of a class, stored as the
/// coefficients `q^(0), …, q^(2k-2)` of `X^0, …, X^{2k-2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclePolynomial {
    pub k: u32,
    pub discriminant: BigInt,
    pub coeffs: Vec<BigInt>,
}

impl CyclePolynomial {
    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coeffs[n]
    }

    /// `q^(0) = q^(2k-2)`.
    pub fn is_palindromic_at_ends(&self) -> bool {
        self.coeffs.first() == self.coeffs.last()
    }
}

impl Serialize for CyclePolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CyclePolynomial", 3)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("D", &JsonInt(&self.discriminant))?;
        let c: Vec<_> = self.coeffs.iter().map(JsonInt).collect();
        st.serialize_field("coeffs", &c)?;
        st.end()
    }
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn power(q: &QuadraticForm, e: u32, len: usize) -> Vec<BigInt> {
    let base = q.dehomogenized();
    let mut acc = vec![BigInt::from(1)];
    for _ in 0..e {
        acc = poly_mul(&acc, &base);
    }
    acc.resize(len, BigInt::zero());
    acc
}

/// The cycle polynomial of the class of `q`.
///
/// Non-square discriminants sum over the reduced cycle of `q`, and the
/// result satisfies `q^(0) = q^(2k-2)` (checked). Square discriminants use
/// the single representative `[0, s, c]`.
pub fn cycle_polynomial(k: u32, q: &QuadraticForm) -> Result<CyclePolynomial> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("cycle polynomial needs k >= 2, got {k}")));
    }
    let (r, _) = reduce(q)?;
    let len = 2 * k as usize - 1;
    let forms = if r.is_square_discriminant() { vec![r.clone()] } else { cycle(&r)?.forms };
    let mut coeffs = vec![BigInt::zero(); len];
    for f in &forms {
        for (c, t) in coeffs.iter_mut().zip(power(f, k - 1, len)) {
            *c += t;
        }
    }
    let poly = CyclePolynomial { k, discriminant: r.discriminant(), coeffs };
    if !r.is_square_discriminant() {
        assert!(poly.is_palindromic_at_ends(), "q^(0) != q^(2k-2) for {q}, k = {k}");
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d5_quadratic() {
        let p = cycle_polynomial(2, &QuadraticForm::new(1, 3, 1)).unwrap();
        let v: Vec<i64> = p.coeffs.iter().map(|c| c.try_into().unwrap()).collect();
        assert_eq!(v, vec![1, -3, 1]);
    }

    #[test]
    fn ends_are_sums_of_outer_coefficients() {
        let q = QuadraticForm::new(2, 6, 3);
        let cyc = cycle(&q).unwrap();
        for k in 2..=6u32 {
            let p = cycle_polynomial(k, &q).unwrap();
            let sa: BigInt = cyc.forms.iter().map(|f| f.a.pow(k - 1)).sum();
            let sc: BigInt = cyc.forms.iter().map(|f| f.c.pow(k - 1)).sum();
            assert_eq!(p.coeffs[0], sc);
            assert_eq!(p.coeffs[2 * k as usize - 2], sa);
        }
    }

    #[test]
    fn square_class_uses_representative() {
        let p = cycle_polynomial(3, &QuadraticForm::new(0, 2, 1)).unwrap();
        let v: Vec<i64> = p.coeffs.iter().map(|c| c.try_into().unwrap()).collect();
        // (-2X + 1)^2
        assert_eq!(v, vec![1, -4, 4, 0, 0]);
    }
}
