//! Reduction theory: reduced forms, cycles, class representatives and the
//! fundamental Pell solution.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{exact_sqrt, JsonInt, Matrix2, QuadraticForm};
use crate::error::{Error, Result};

/// `⌊(p + q√d)/r⌋` for a non-square `d > 0` and `r ≠ 0`.
fn floor_quadratic(p: &BigInt, q: &BigInt, r: &BigInt, d: &BigInt) -> BigInt {
    // q√d = s + θ with s an integer and θ ∈ (0, 1)
    let root: BigInt = (q * q * d).sqrt();
    let s: BigInt = if q.is_negative() { -(root + 1u32) } else { root };
    let num: BigInt = p + s;
    if r.is_positive() {
        num.div_floor(r)
    } else {
        (-(num + 1u32)).div_floor(&-r)
    }
}

/// `⌈w⌉` for the first root `w = (b + √D)/(2a)` of `Q(X, -1)`.
fn ceil_root(q: &QuadraticForm, d: &BigInt) -> BigInt {
    floor_quadratic(&q.b, &BigInt::one(), &(BigInt::from(2) * &q.a), d) + 1
}

/// `[[n+1, n], [-n, 1-n]]`, the product of `n` copies of `M_2`.
fn step_two_power(n: &BigInt) -> Matrix2 {
    Matrix2::new(n + 1, n.clone(), -n.clone(), BigInt::one() - n)
}

/// Returns a reduced form `R` and `M ∈ SL₂(Z)` with `Q ∘ M = R`.
///
/// Non-square discriminants reduce to a Zagier-reduced form; square
/// discriminants `s²` reduce to the representative `[0, s, c]` with
/// `0 ≤ c < s`.
pub fn reduce(q: &QuadraticForm) -> Result<(QuadraticForm, Matrix2)> {
    let d = q.discriminant();
    if !d.is_positive() {
        return Err(Error::NonPositiveDiscriminant(d.to_string()));
    }
    if let Some(s) = exact_sqrt(&d) {
        return reduce_square(q, &s);
    }
    let bits = q.a.bits().max(q.b.bits()).max(q.c.bits()) as usize;
    let cap = 10 * bits + 100;
    let mut form = q.clone();
    let mut total = Matrix2::identity();
    let mut steps = 0;
    while !form.is_reduced() {
        if steps >= cap {
            return Err(Error::ReductionDidNotTerminate { form: q.to_string(), steps });
        }
        steps += 1;
        let m = ceil_root(&form, &d);
        let step = if m == BigInt::from(2) {
            // w ∈ (1, 2): each M_2 step lowers u = 1/(w-1) by one, so a run
            // of them is applied at once
            let two_a = BigInt::from(2) * &form.a;
            let p = &form.b - &two_a;
            let den = &p * &p - &d;
            let n = floor_quadratic(&(&two_a * &p), &-two_a, &den, &d).max(BigInt::one());
            step_two_power(&n)
        } else {
            Matrix2::step(&m)
        };
        form = form.compose(&step);
        total = total.mul(&step);
    }
    Ok((form, total))
}

fn reduce_square(q: &QuadraticForm, s: &BigInt) -> Result<(QuadraticForm, Matrix2)> {
    // primitive vectors (x, y) with Q(x, y) = 0
    let roots: Vec<(BigInt, BigInt)> = if q.a.is_zero() {
        vec![(BigInt::one(), BigInt::zero()), (q.c.clone(), -q.b.clone())]
    } else {
        let two_a = BigInt::from(2) * &q.a;
        vec![(-&q.b + s, two_a.clone()), (-&q.b - s, two_a)]
    };
    for (x, y) in roots {
        let g = x.gcd(&y);
        if g.is_zero() {
            continue;
        }
        let (x, y) = (x / &g, y / &g);
        // u x + v y = 1 gives [[x, -v], [y, u]] ∈ SL₂(Z)
        let e = x.extended_gcd(&y);
        let (u, v) = if e.gcd.is_negative() { (-e.x, -e.y) } else { (e.x, e.y) };
        let m = Matrix2::new(x, -v, y, u);
        let r = q.compose(&m);
        debug_assert!(r.a.is_zero());
        if r.b.is_positive() {
            let t = -r.c.div_floor(&r.b);
            let shift = Matrix2::new(1, t, 0, 1);
            return Ok((r.compose(&shift), m.mul(&shift)));
        }
    }
    unreachable!("one of the two rational roots yields a positive middle coefficient")
}

/// A cycle `Q_0, …, Q_{r-1}` of reduced forms with `Q_j = Q_{j-1} ∘ M_{m_j}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionCycle {
    pub forms: Vec<QuadraticForm>,
    pub steps: Vec<BigInt>,
}

impl ReductionCycle {
    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    /// `M_{m_1} ⋯ M_{m_r}`, an automorph of `Q_0`.
    pub fn product(&self) -> Matrix2 {
        self.steps.iter().fold(Matrix2::identity(), |acc, m| acc.mul(&Matrix2::step(m)))
    }
}

impl Serialize for ReductionCycle {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ReductionCycle", 2)?;
        st.serialize_field("forms", &self.forms)?;
        let steps: Vec<_> = self.steps.iter().map(JsonInt).collect();
        st.serialize_field("steps", &steps)?;
        st.end()
    }
}

/// The cycle of reduced forms through a reduced form of non-square
/// discriminant.
pub fn cycle(q: &QuadraticForm) -> Result<ReductionCycle> {
    let d = q.discriminant();
    if !d.is_positive() {
        return Err(Error::NonPositiveDiscriminant(d.to_string()));
    }
    if q.is_square_discriminant() {
        return Err(Error::SquareDiscriminant(d.to_string()));
    }
    if !q.is_reduced() {
        return Err(Error::NotReduced(q.to_string()));
    }
    let mut forms = vec![q.clone()];
    let mut steps = Vec::new();
    let mut cur = q.clone();
    loop {
        let m = ceil_root(&cur, &d);
        debug_assert!(m >= BigInt::from(2));
        let next = cur.compose(&Matrix2::step(&m));
        debug_assert!(next.is_reduced());
        steps.push(m);
        if next == *q {
            return Ok(ReductionCycle { forms, steps });
        }
        forms.push(next.clone());
        cur = next;
    }
}

fn check_discriminant(d: i64) -> Result<()> {
    if d <= 0 {
        return Err(Error::NonPositiveDiscriminant(d.to_string()));
    }
    if !matches!(d.rem_euclid(4), 0 | 1) {
        return Err(Error::InvalidDiscriminant(d));
    }
    Ok(())
}

/// Every reduced form of a non-square discriminant, sorted.
pub fn reduced_forms(d: i64) -> Result<Vec<QuadraticForm>> {
    check_discriminant(d)?;
    if exact_sqrt(&BigInt::from(d)).is_some() {
        return Err(Error::SquareDiscriminant(d.to_string()));
    }
    // b > a + c ≥ 2√(ac) forces b² > D, and D = b² - 4ac ≥ b² - (b-1)²
    // bounds b by (D + 1)/2
    let mut out = Vec::new();
    let mut b = d.sqrt() + 1;
    while b <= (d + 1) / 2 {
        if (b * b - d) % 4 == 0 {
            let n = (b * b - d) / 4;
            for a in 1..=n {
                if n % a == 0 && b > a + n / a {
                    out.push(QuadraticForm::new(a, b, n / a));
                }
            }
        }
        b += 1;
    }
    out.sort();
    Ok(out)
}

/// One representative per `SL₂(Z)`-class of forms of discriminant `d`.
///
/// For non-square `d` each representative is the smallest reduced form of
/// its cycle; for `d = s²` the representatives are `[0, s, c]`, `0 ≤ c < s`.
pub fn class_representatives(d: i64) -> Result<Vec<QuadraticForm>> {
    check_discriminant(d)?;
    if let Some(s) = exact_sqrt(&BigInt::from(d)) {
        let s: i64 = s.try_into().expect("square root of an i64");
        return Ok((0..s).map(|c| QuadraticForm::new(0, s, c)).collect());
    }
    let mut unused: BTreeSet<QuadraticForm> = reduced_forms(d)?.into_iter().collect();
    let mut reps = Vec::new();
    while let Some(q) = unused.pop_first() {
        for f in cycle(&q)?.forms {
            unused.remove(&f);
        }
        reps.push(q);
    }
    Ok(reps)
}

/// The smallest solution `t, u > 0` of `t² − Du² = 4`.
///
/// Read off from the cycle product of the principal form, which generates
/// the stabilizer of that (primitive) form.
pub fn pell(d: &BigInt) -> Result<(BigInt, BigInt)> {
    if !d.is_positive() {
        return Err(Error::NonPositiveDiscriminant(d.to_string()));
    }
    let r4: i64 = d.mod_floor(&BigInt::from(4)).try_into().expect("residue");
    if r4 > 1 {
        return Err(Error::InvalidDiscriminant(d.try_into().unwrap_or(r4)));
    }
    if exact_sqrt(d).is_some() {
        return Err(Error::SquareDiscriminant(d.to_string()));
    }
    let b = BigInt::from(r4);
    let principal = QuadraticForm { a: BigInt::one(), c: (&b * &b - d) / 4, b };
    let (q, _) = reduce(&principal)?;
    let p = cycle(&q)?.product();
    let t = p.trace().abs();
    let u = p.c.abs() / &q.a;
    debug_assert_eq!(&t * &t - d * &u * &u, BigInt::from(4));
    Ok((t, u))
}
