//! The level-one forms used downstream: Eisenstein series, Δ, j, echelon
//! bases of weakly holomorphic forms and the Bol operator.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::QSeries;
use crate::error::{Error, Result};
use crate::exactmath::{bernoulli, int, sigma, Rational};

pub const DEFAULT_TRUNCATION: i64 = 200;

/// `G_w = -B_w/(2w) + Σ σ_{w-1}(n) q^n` for even `w ≥ 4`.
pub fn eisenstein_g(w: i64, n: i64) -> Result<QSeries> {
    if w < 4 || w % 2 != 0 {
        return Err(Error::InvalidArgument(format!("Eisenstein series needs even weight >= 4, got {w}")));
    }
    let mut coeffs = Vec::with_capacity(n.max(0) as usize + 1);
    coeffs.push(-bernoulli(w as usize) / int(2 * w));
    for m in 1..=n {
        coeffs.push(Rational::from_integer(sigma(m as u64, (w - 1) as u32)));
    }
    Ok(QSeries::new(0, coeffs, n, Some(w)))
}

/// `E_w = 1 + O(q)`, or the constant 1 for `w = 0`.
pub fn eisenstein_e(w: i64, n: i64) -> Result<QSeries> {
    if w == 0 {
        return Ok(QSeries::constant(Rational::one(), n, Some(0)));
    }
    let g = eisenstein_g(w, n)?;
    let c = g.constant_term().recip();
    Ok(g.scale(&c))
}

/// `Δ = (E_4³ − E_6²)/1728`.
pub fn delta(n: i64) -> QSeries {
    let e4 = eisenstein_e(4, n).expect("weight 4");
    let e6 = eisenstein_e(6, n).expect("weight 6");
    let d = e4.pow(3).expect("power").sub(&e6.mul(&e6)).expect("equal weights");
    d.scale(&Rational::new(BigInt::one(), BigInt::from(1728)))
}

/// `j = E_4³/Δ = q^{-1} + 744 + 196884 q + …`.
pub fn j_function(n: i64) -> QSeries {
    let e4 = eisenstein_e(4, n + 2).expect("weight 4");
    let j = e4.pow(3).expect("power").mul(&delta(n + 2).invert().expect("Δ is invertible"));
    j.truncate(n)
}

/// Writes `w = 12ℓ + w'` with `w' ∈ {0, 4, 6, 8, 10, 14}` and returns `ℓ`:
/// the echelon basis of weight `w` has elements `q^{-m} + O(q^{ℓ+1})` for
/// every `m ≥ -ℓ`.
pub fn weakly_basis_pivot(w: i64) -> Result<i64> {
    Ok(decompose_weight(w)?.0)
}

fn decompose_weight(w: i64) -> Result<(i64, i64)> {
    if w % 2 != 0 {
        return Err(Error::InvalidArgument(format!("weight {w} is odd")));
    }
    let r = w.rem_euclid(12);
    let wp = if r == 2 { 14 } else { r };
    Ok(((w - wp) / 12, wp))
}

fn basis_at(w: i64, m: i64, p: i64) -> Result<QSeries> {
    let (l, wp) = decompose_weight(w)?;
    let e = eisenstein_e(wp, p)?;
    let d = delta(p);
    let dl = if l >= 0 { d.pow(l)? } else { d.pow(-l)?.invert()? };
    let base = dl.mul(&e);
    let j = j_function(p).with_weight(Some(0));
    let top = (m + l) as usize;
    let mut reduced: Vec<QSeries> = Vec::with_capacity(top + 1);
    let mut g = base;
    for i in 0..=top {
        if i > 0 {
            g = g.mul(&j);
        }
        // pivot exponent of g is l - i; clear exponents l - i + 1 ..= l
        let mut h = g.clone();
        for exp in (l - i as i64 + 1)..=l {
            let c = h.coeff(exp)?;
            if !c.is_zero() {
                let t = (l - exp) as usize;
                h = h.sub(&reduced[t].scale(&c))?;
            }
        }
        reduced.push(h);
    }
    Ok(reduced.pop().expect("at least one element"))
}

/// The echelon basis element `f_{w,m} = q^{-m} + O(q^{ℓ_w + 1})` of weight
/// `w`, known up to `q^n`.
pub fn weakly_basis(w: i64, m: i64, n: i64) -> Result<QSeries> {
    let (l, _) = decompose_weight(w)?;
    if m < -l {
        return Err(Error::NoSuchBasisElement { weight: w, order: m });
    }
    let mut slack = 2 * (l.abs() + m.abs() + 2);
    loop {
        let f = basis_at(w, m, n + slack)?;
        if f.truncation() >= n {
            return Ok(f.truncate(n));
        }
        slack *= 2;
    }
}

/// `D^{2k-1} g` for `g` of weight `2 - 2k`, with `D = q d/dq`.
pub fn bol(g: &QSeries, k: i64) -> Result<QSeries> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("Bol operator needs k >= 2, got {k}")));
    }
    match g.weight() {
        None => Err(Error::MissingWeight),
        Some(w) if w != 2 - 2 * k => Err(Error::WeightMismatch { expected: 2 - 2 * k, found: w }),
        Some(_) => Ok(g.theta_power((2 * k - 1) as u32, Some(2 * k))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;
    use num_integer::Integer;

    #[test]
    fn g4_expansion() {
        let g = eisenstein_g(4, 3).unwrap();
        assert_eq!(g, QSeries::new(0, vec![rat(1, 240), int(1), int(9), int(28)], 3, Some(4)));
    }

    #[test]
    fn g12_constant() {
        let g = eisenstein_g(12, 1).unwrap();
        assert_eq!(g.coeff(0).unwrap(), rat(691, 65520));
        assert_eq!(g.coeff(1).unwrap(), int(1));
    }

    #[test]
    fn eisenstein_prime_coefficients() {
        for w in [4i64, 6, 8, 10, 12] {
            let g = eisenstein_g(w, 50).unwrap();
            for p in [2i64, 3, 5, 7, 11, 13, 47] {
                let expect = BigInt::from(p).pow((w - 1) as u32) + 1;
                assert_eq!(g.coeff(p).unwrap(), Rational::from_integer(expect));
            }
        }
    }

    #[test]
    fn divisor_sums_are_multiplicative() {
        for m in 1u64..=50 {
            for n in 1u64..=50 {
                if m.gcd(&n) == 1 {
                    assert_eq!(sigma(m * n, 3), sigma(m, 3) * sigma(n, 3));
                }
            }
        }
    }

    #[test]
    fn odd_weight_rejected() {
        assert!(eisenstein_g(5, 3).is_err());
        assert!(eisenstein_g(2, 3).is_err());
    }

    /// Independent oracle: q Π (1 - q^n)^24 by direct polynomial multiplication.
    #[test]
    fn delta_matches_product() {
        let n = 40usize;
        let mut p = vec![BigInt::zero(); n + 1];
        p[0] = BigInt::one();
        for m in 1..=n {
            for _ in 0..24 {
                for i in (m..=n).rev() {
                    let t = p[i - m].clone();
                    p[i] -= t;
                }
            }
        }
        let d = delta(n as i64);
        assert_eq!(d.valuation(), 1);
        for i in 1..=n {
            assert_eq!(d.coeff(i as i64).unwrap(), Rational::from_integer(p[i - 1].clone()), "tau({i})");
        }
        assert_eq!(d.coeff(2).unwrap(), int(-24));
        assert_eq!(d.coeff(3).unwrap(), int(252));
    }

    #[test]
    fn delta_times_inverse() {
        let d = delta(30);
        let one = d.mul(&d.invert().unwrap());
        assert_eq!(one, QSeries::constant(int(1), 29, Some(0)));
    }

    #[test]
    fn j_expansion() {
        let j = j_function(5);
        assert_eq!(j.valuation(), -1);
        assert_eq!(j.truncation(), 5);
        assert_eq!(j.coeff(-1).unwrap(), int(1));
        assert_eq!(j.coeff(0).unwrap(), int(744));
        assert_eq!(j.coeff(1).unwrap(), int(196884));
        assert_eq!(j.coeff(2).unwrap(), int(21493760));
    }

    #[test]
    fn basis_weight_zero() {
        let f = weakly_basis(0, 1, 10).unwrap();
        let j = j_function(10);
        let expect = j.sub(&QSeries::constant(int(744), 10, None)).unwrap();
        assert_eq!(f, expect.with_weight(Some(0)));
    }

    #[test]
    fn basis_minus_twelve_is_inverse_delta() {
        let f = weakly_basis(-12, 1, 20).unwrap();
        assert_eq!(f, delta(22).invert().unwrap().truncate(20));
    }

    #[test]
    fn basis_minus_two_has_nonzero_constant() {
        // E10/Δ: the only weight -2 element with principal part q^-1
        let f = weakly_basis(-2, 1, 10).unwrap();
        assert_eq!(f.valuation(), -1);
        assert_eq!(f.coeff(0).unwrap(), int(-240));
        let e10 = eisenstein_e(10, 12).unwrap();
        assert_eq!(f, e10.mul(&delta(12).invert().unwrap()).truncate(10));
    }

    #[test]
    fn basis_echelon_shape() {
        for w in [-10i64, -8, -6, -4, -2, 0, 2, 4, 6, 8, 10, 12, 14, 16, 26] {
            let l = weakly_basis_pivot(w).unwrap();
            let elems: Vec<_> = (-l..=-l + 3).map(|m| weakly_basis(w, m, 30).unwrap()).collect();
            for (idx, f) in elems.iter().enumerate() {
                let m = -l + idx as i64;
                assert_eq!(f.weight(), Some(w));
                assert_eq!(f.valuation(), -m, "w={w} m={m}");
                assert_eq!(f.coeff(-m).unwrap(), int(1));
                for e in (-m + 1)..=l {
                    assert!(f.coeff(e).unwrap().is_zero(), "w={w} m={m} e={e}");
                }
            }
            assert!(matches!(weakly_basis(w, -l - 1, 10), Err(Error::NoSuchBasisElement { .. })));
        }
    }

    #[test]
    fn cusp_weights_have_zero_constant() {
        for w in [4i64, 6, 8, 10] {
            for m in 1..=3 {
                assert!(weakly_basis(w, m, 10).unwrap().coeff(0).unwrap().is_zero());
            }
        }
        let f = weakly_basis(12, 1, 10).unwrap();
        assert!(f.coeff(0).unwrap().is_zero());
        assert!(f.coeff(1).unwrap().is_zero());
    }

    #[test]
    fn bol_examples() {
        let c = QSeries::constant(int(7), 10, Some(-2));
        assert!(bol(&c, 2).unwrap().is_zero());
        let q = QSeries::monomial(int(1), -1, 10, Some(-2));
        assert_eq!(bol(&q, 2).unwrap(), QSeries::monomial(int(-1), -1, 10, Some(4)));
        let f = weakly_basis(-2, 1, 20).unwrap();
        let b = bol(&f, 2).unwrap();
        assert_eq!(b.weight(), Some(4));
        assert!(b.coeff(0).unwrap().is_zero());
        for n in -1..=20i64 {
            assert_eq!(b.coeff(n).unwrap(), f.coeff(n).unwrap() * int(n.pow(3)));
        }
        assert!(matches!(bol(&f, 3), Err(Error::WeightMismatch { .. })));
        assert!(matches!(bol(&f.clone().with_weight(None), 2), Err(Error::MissingWeight)));
    }

    #[test]
    fn bol_is_linear() {
        let f = weakly_basis(-4, 1, 15).unwrap();
        let g = weakly_basis(-4, 2, 15).unwrap();
        let a = rat(3, 7);
        let lhs = bol(&f.scale(&a).add(&g).unwrap(), 3).unwrap();
        let rhs = bol(&f, 3).unwrap().scale(&a).add(&bol(&g, 3).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}
