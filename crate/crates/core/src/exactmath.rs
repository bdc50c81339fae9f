//! Exact rational arithmetic: Bernoulli numbers, Kronecker symbols,
//! special values of Dirichlet L-functions at non-positive integers and
//! Cohen's function `H(k, D)`.

use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub(crate) fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

static BERNOULLI: LazyLock<RwLock<Vec<Rational>>> = LazyLock::new(|| RwLock::new(vec![Rational::one()]));

fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one(); n + 1];
    for j in 1..n {
        row[j] = &row[j - 1] * BigInt::from(n - j + 1) / BigInt::from(j);
    }
    row
}

/// Bernoulli number `B_n` with `B_1 = -1/2`.
///
/// Values come from the recurrence `sum_{j<=n} C(n+1, j) B_j = 0` and are
/// cached; concurrent readers share the table and extension takes the write
/// lock.
pub fn bernoulli(n: usize) -> Rational {
    if let Some(b) = BERNOULLI.read().expect("bernoulli table poisoned").get(n) {
        return b.clone();
    }
    let mut table = BERNOULLI.write().expect("bernoulli table poisoned");
    while table.len() <= n {
        let m = table.len();
        let row = binomial_row(m + 1);
        let mut acc = Rational::zero();
        for (j, b) in table.iter().enumerate() {
            if !b.is_zero() {
                acc += Rational::from_integer(row[j].clone()) * b;
            }
        }
        table.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
    }
    table[n].clone()
}

/// Bernoulli polynomial `B_n(x) = sum_j C(n, j) B_j x^(n-j)`.
pub fn bernoulli_polynomial(n: usize, x: &Rational) -> Rational {
    let row = binomial_row(n);
    let mut acc = Rational::zero();
    let mut xp = Rational::one();
    // accumulate from the top power down: term j uses x^(n-j)
    let mut powers = Vec::with_capacity(n + 1);
    for _ in 0..=n {
        powers.push(xp.clone());
        xp *= x;
    }
    for (j, c) in row.iter().enumerate() {
        let b = bernoulli(j);
        if !b.is_zero() {
            acc += Rational::from_integer(c.clone()) * b * &powers[n - j];
        }
    }
    acc
}

fn jacobi(mut a: i64, mut n: i64) -> i8 {
    debug_assert!(n > 0 && n % 2 == 1);
    a = a.rem_euclid(n);
    let mut s = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                s = -s;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            s = -s;
        }
        a %= n;
    }
    if n == 1 {
        s
    } else {
        0
    }
}

/// Kronecker symbol `(d / n)`.
pub fn kronecker(d: i64, n: i64) -> i8 {
    if n == 0 {
        return if d.abs() == 1 { 1 } else { 0 };
    }
    let mut s = 1i8;
    let mut n = n;
    if n < 0 {
        n = -n;
        if d < 0 {
            s = -s;
        }
    }
    let tz = n.trailing_zeros();
    if tz > 0 {
        if d % 2 == 0 {
            return 0;
        }
        if tz % 2 == 1 && matches!(d.rem_euclid(8), 3 | 5) {
            s = -s;
        }
        n >>= tz;
    }
    if n == 1 {
        return s;
    }
    s * jacobi(d, n)
}

/// Kronecker symbol `(d / n)` for a big `n`; `d` must be a discriminant so
/// that the symbol is periodic in `n` with period `|d|`.
pub(crate) fn kronecker_big(d: i64, n: &BigInt) -> i8 {
    let sign = if n.is_negative() { kronecker(d, -1) } else { 1 };
    let m = n.abs().mod_floor(&BigInt::from(d.abs().max(1) * 4));
    let m: i64 = m.try_into().expect("residue fits in i64");
    if m == 0 {
        return if d.abs() == 1 { sign } else { 0 };
    }
    sign * kronecker(d, m)
}

pub fn mobius(n: u64) -> i8 {
    assert!(n > 0, "mobius(0) is undefined");
    let mut n = n;
    let mut s = 1i8;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            s = -s;
        }
        p += 1;
    }
    if n > 1 {
        -s
    } else {
        s
    }
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Divisor power sum `sigma_s(n)`.
pub fn sigma(n: u64, s: u32) -> BigInt {
    divisors(n).into_iter().map(|d| BigInt::from(d).pow(s)).sum()
}

fn is_squarefree(n: u64) -> bool {
    n > 0 && mobius(n) != 0
}

pub fn is_fundamental(d: i64) -> bool {
    if d == 1 {
        return true;
    }
    if d == 0 {
        return false;
    }
    let a = d.unsigned_abs();
    match d.rem_euclid(4) {
        1 => is_squarefree(a),
        0 => {
            let n = d / 4;
            matches!(n.rem_euclid(4), 2 | 3) && is_squarefree(n.unsigned_abs())
        }
        _ => false,
    }
}

/// A fundamental discriminant: 1, a squarefree value `≡ 1 mod 4`, or `4n`
/// with `n` squarefree and `≡ 2, 3 mod 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct FundamentalDiscriminant(i64);

impl FundamentalDiscriminant {
    pub fn new(d: i64) -> Result<Self> {
        if is_fundamental(d) {
            Ok(Self(d))
        } else {
            Err(Error::NotFundamental(d))
        }
    }

    pub fn one() -> Self {
        Self(1)
    }

    pub fn value(self) -> i64 {
        self.0
    }

    /// The Kronecker character `n ↦ (D0 / n)`.
    pub fn chi(self, n: i64) -> i8 {
        kronecker(self.0, n)
    }
}

impl TryFrom<i64> for FundamentalDiscriminant {
    type Error = Error;
    fn try_from(d: i64) -> Result<Self> {
        Self::new(d)
    }
}

impl From<FundamentalDiscriminant> for i64 {
    fn from(d: FundamentalDiscriminant) -> i64 {
        d.0
    }
}

/// Writes a non-zero discriminant as `D0 · f²` with `D0` fundamental.
pub fn fundamental_decomposition(d: i64) -> Result<(FundamentalDiscriminant, u64)> {
    if d == 0 || !matches!(d.rem_euclid(4), 0 | 1) {
        return Err(Error::InvalidDiscriminant(d));
    }
    let a = d.unsigned_abs();
    // largest f with d / f² still a discriminant; scanning divisors from the
    // top finds it first
    for f in divisors(a).into_iter().rev() {
        if !a.is_multiple_of(f * f) {
            continue;
        }
        let d0 = d / (f * f) as i64;
        if is_fundamental(d0) {
            return Ok((FundamentalDiscriminant(d0), f));
        }
    }
    unreachable!("every discriminant has a fundamental part")
}

/// `ζ(1 - k)`.
pub fn zeta_neg(k: u32) -> Rational {
    assert!(k >= 1, "zeta_neg requires k >= 1");
    if k == 1 {
        return rat(-1, 2);
    }
    -bernoulli(k as usize) / int(k as i64)
}

/// Generalized Bernoulli number `B_{k,χ}` of the Kronecker character of `d0`.
pub fn generalized_bernoulli(d0: FundamentalDiscriminant, k: u32) -> Rational {
    let f = d0.value().abs();
    let fr = int(f);
    let scale = fr.clone().pow(k as i32 - 1);
    let mut acc = Rational::zero();
    for a in 1..=f {
        let chi = d0.chi(a);
        if chi == 0 {
            continue;
        }
        let b = bernoulli_polynomial(k as usize, &(int(a) / &fr));
        if chi > 0 {
            acc += b;
        } else {
            acc -= b;
        }
    }
    acc * scale
}

/// `L(1 - k, (D0 / ·)) = -B_{k,χ} / k`.
pub fn dirichlet_l_neg(d0: FundamentalDiscriminant, k: u32) -> Rational {
    assert!(k >= 1, "dirichlet_l_neg requires k >= 1");
    if d0.value() == 1 {
        return zeta_neg(k);
    }
    -generalized_bernoulli(d0, k) / int(k as i64)
}

/// Cohen's `H(k, D)`.
///
/// For `D = D0 f²` this is `L(1-k, χ_{D0}) Σ_{d|f} μ(d) χ_{D0}(d) d^{k-1} σ_{2k-1}(f/d)`,
/// and `H(k, 0) = ζ(1 - 2k)`. Negative `D` are accepted (they occur in the
/// odd-`k` Cohen series).
pub fn cohen_h(k: u32, d: i64) -> Result<Rational> {
    assert!(k >= 1, "cohen_h requires k >= 1");
    if d == 0 {
        return Ok(zeta_neg(2 * k));
    }
    let (d0, f) = fundamental_decomposition(d)?;
    let mut sum = BigInt::zero();
    for e in divisors(f) {
        let mu = mobius(e);
        let chi = d0.chi(e as i64);
        if mu == 0 || chi == 0 {
            continue;
        }
        let term = BigInt::from(e).pow(k - 1) * sigma(f / e, 2 * k - 1);
        if mu * chi > 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(dirichlet_l_neg(d0, k) * Rational::from_integer(sum))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), int(1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(12), rat(-691, 2730));
    }

    #[test]
    fn bernoulli_odd_vanish() {
        for n in (3..100).step_by(2) {
            assert!(bernoulli(n).is_zero(), "B_{n}");
        }
    }

    /// Independent route: B_n = sum_{k=0}^{n} 1/(k+1) sum_{j=0}^{k} (-1)^j C(k,j) j^n,
    /// which yields the B_1 = +1/2 convention.
    #[test]
    fn bernoulli_matches_double_sum() {
        for n in 2..=20usize {
            let mut acc = Rational::zero();
            for k in 0..=n {
                let row = binomial_row(k);
                let mut inner = BigInt::zero();
                for (j, c) in row.iter().enumerate() {
                    let t = c * BigInt::from(j).pow(n as u32);
                    if j % 2 == 0 {
                        inner += t;
                    } else {
                        inner -= t;
                    }
                }
                acc += Rational::new(inner, BigInt::from(k + 1));
            }
            assert_eq!(acc, bernoulli(n), "n = {n}");
        }
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(5, 1), 1);
        assert_eq!(kronecker(5, 5), 0);
        assert_eq!(kronecker(-4, 3), -1);
        assert_eq!(kronecker(-4, -1), -1);
        assert_eq!(kronecker(8, 3), -1);
        assert_eq!(kronecker(5, 2), -1);
    }

    /// Quadratic-residue oracle for odd primes.
    #[test]
    fn kronecker_matches_euler_criterion() {
        for p in [3i64, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            for d in -60i64..60 {
                let r = d.rem_euclid(p);
                let expect = if r == 0 {
                    0
                } else if (1..p).any(|x| (x * x) % p == r) {
                    1
                } else {
                    -1
                };
                assert_eq!(kronecker(d, p), expect, "({d}/{p})");
            }
        }
    }

    #[test]
    fn kronecker_multiplicative() {
        for d in -200i64..=200 {
            for m in (-200i64..=200).step_by(7) {
                for n in (-200i64..=200).step_by(11) {
                    assert_eq!(kronecker(d, m * n), kronecker(d, m) * kronecker(d, n), "d={d} m={m} n={n}");
                }
            }
        }
    }

    #[test]
    fn big_kronecker_agrees() {
        for d in [-4i64, -3, 5, 8, 12, 13, -7] {
            for n in -300i64..300 {
                assert_eq!(kronecker_big(d, &BigInt::from(n)), kronecker(d, n), "d={d} n={n}");
            }
        }
    }

    #[test]
    fn zeta_values() {
        assert_eq!(zeta_neg(1), rat(-1, 2));
        assert_eq!(zeta_neg(2), rat(-1, 12));
        assert_eq!(zeta_neg(4), rat(1, 120));
        assert!(zeta_neg(3).is_zero());
    }

    #[test]
    fn l_values() {
        let one = FundamentalDiscriminant::one();
        assert_eq!(dirichlet_l_neg(one, 2), rat(-1, 12));
        let m4 = FundamentalDiscriminant::new(-4).unwrap();
        assert_eq!(dirichlet_l_neg(m4, 1), rat(1, 2));
        let five = FundamentalDiscriminant::new(5).unwrap();
        assert_eq!(dirichlet_l_neg(five, 2), rat(-2, 5));
    }

    /// Numerical oracle: Σ χ(n) n^{k-1} e^{-εn} → L(1-k, χ) as ε → 0 for
    /// non-principal χ, accelerated by Richardson extrapolation in ε.
    #[test]
    fn l_value_matches_abel_summation() {
        fn smoothed(d: i64, k: i32, eps: f64) -> f64 {
            let n_max = (60.0 / eps) as i64;
            (1..=n_max).map(|n| f64::from(kronecker(d, n)) * (n as f64).powi(k - 1) * (-eps * n as f64).exp()).sum()
        }
        for (d, k) in [(5i64, 2u32), (-4, 1), (-3, 3), (8, 2), (13, 4)] {
            let e = 0.02;
            let (a, b, c) = (smoothed(d, k as i32, e), smoothed(d, k as i32, e / 2.0), smoothed(d, k as i32, e / 4.0));
            // two Richardson passes remove the O(ε) and O(ε²) terms
            let ab = 2.0 * b - a;
            let bc = 2.0 * c - b;
            let est = (4.0 * bc - ab) / 3.0;
            let exact = dirichlet_l_neg(FundamentalDiscriminant::new(d).unwrap(), k);
            let exact = f64::from_rational(&exact);
            assert!((est - exact).abs() < 1e-4 * (1.0 + exact.abs()), "d={d} k={k}: {est} vs {exact}");
        }
    }

    use crate::scalar::Real;

    #[test]
    fn fundamental_checks() {
        for d in [1, 5, 8, 12, 13, -3, -4, -7, -8, 24, -20] {
            assert!(is_fundamental(d), "{d}");
        }
        for d in [0, 4, 9, 16, 20, 2, 3, -12, 45] {
            assert!(!is_fundamental(d), "{d}");
        }
        assert_eq!(fundamental_decomposition(20).unwrap(), (FundamentalDiscriminant(5), 2));
        assert_eq!(fundamental_decomposition(4).unwrap(), (FundamentalDiscriminant(1), 2));
        assert_eq!(fundamental_decomposition(-12).unwrap(), (FundamentalDiscriminant(-3), 2));
    }

    #[test]
    fn cohen_h_values() {
        assert_eq!(cohen_h(2, 0).unwrap(), zeta_neg(4));
        // D0 = 1, f = 2: ζ(-1)(σ3(2) - 2 σ3(1)) = -7/12
        assert_eq!(cohen_h(2, 4).unwrap(), rat(-7, 12));
        assert_eq!(cohen_h(2, 5).unwrap(), rat(-2, 5));
        assert_eq!(cohen_h(2, 1).unwrap(), rat(-1, 12));
        // classical H(1, -3) = 1/3, H(1, -4) = 1/2
        assert_eq!(cohen_h(1, -3).unwrap(), rat(1, 3));
        assert_eq!(cohen_h(1, -4).unwrap(), rat(1, 2));
        assert!(matches!(cohen_h(2, 6), Err(Error::InvalidDiscriminant(6))));
    }

    #[test]
    fn cohen_h_on_fundamentals_is_l_value() {
        for d in [5i64, 8, 12, 13, 17, 21, 24, 28, 29] {
            for k in [2u32, 4] {
                let d0 = FundamentalDiscriminant::new(d).unwrap();
                assert_eq!(cohen_h(k, d).unwrap(), dirichlet_l_neg(d0, k));
            }
        }
    }
}
