use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::QuadraticForm;
use crate::error::{Error, Result};
use crate::exactmath::{kronecker_big, FundamentalDiscriminant};

/// The genus character `ω_{D1}(Q)`.
///
/// Zero when `gcd(a, b, c, D1) > 1`; otherwise `(D1 / r)` for a value `r`
/// represented by `Q` and coprime to `D1`. The search for `r` walks the
/// square rings `max(|x|, |y|) = 1, 2, …` up to `|D1|(|a|+|b|+|c|)`, doubling
/// the bound at most three times.
pub fn genus_char(d1: FundamentalDiscriminant, q: &QuadraticForm) -> Result<i8> {
    let disc = q.discriminant();
    let dv = BigInt::from(d1.value());
    let (d2, rem) = disc.div_rem(&dv);
    let d2_ok = matches!(i64::try_from(d2.mod_floor(&BigInt::from(4))), Ok(0 | 1));
    if !rem.is_zero() || !d2_ok {
        return Err(Error::InvalidGenusSplit { d1: d1.value(), disc: disc.to_string() });
    }
    if d1.value() == 1 {
        return Ok(1);
    }
    if !q.content().gcd(&dv).is_one() {
        return Ok(0);
    }
    let base = d1.value().abs() * (coef_bound(&q.a) + coef_bound(&q.b) + coef_bound(&q.c)).max(1);
    let limit = base.saturating_mul(8);
    let mut radius = 1i64;
    while radius <= limit {
        if let Some(r) = ring_search(q, &dv, radius) {
            return Ok(kronecker_big(d1.value(), &r));
        }
        radius += 1;
    }
    Err(Error::RepresentativeNotFound { d1: d1.value(), form: q.to_string(), bound: limit })
}

fn coef_bound(x: &BigInt) -> i64 {
    i64::try_from(x.abs()).unwrap_or(i64::MAX / 64).min(i64::MAX / 64)
}

fn ring_search(q: &QuadraticForm, d1: &BigInt, radius: i64) -> Option<BigInt> {
    let r = BigInt::from(radius);
    for t in -radius..=radius {
        let t = BigInt::from(t);
        for (x, y) in [(r.clone(), t.clone()), (t.clone(), r.clone())] {
            let v = q.eval(&x, &y);
            if !v.is_zero() && v.gcd(d1).is_one() {
                return Some(v);
            }
        }
    }
    None
}
