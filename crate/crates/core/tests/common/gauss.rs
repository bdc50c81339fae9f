//! Gauss reduction: `|√D − 2|a|| < b < √D`, with the cycle generated by
//! `ρ(a, b, c) = (c, b', (b'² − D)/4c)`, `b' ≡ −b (mod 2c)` normalized.
//! Two reduced forms are properly equivalent iff they share a ρ-cycle.

pub fn reduced(d: i64, (a, b, _): (i64, i64, i64)) -> bool {
    let s = (d as f64).sqrt();
    a != 0 && (b as f64) < s && (b as f64) > 0.0 && (s - 2.0 * a.abs() as f64).abs() < b as f64
}

fn normalize(d: i64, a: i64, b: i64) -> i64 {
    let s = (d as f64).sqrt();
    let m = 2 * a.abs();
    // b' ≡ b (mod 2|a|) in (√D − 2|a|, √D] when |a| < √D, else in (−|a|, |a|]
    let (lo, _) = if (a.abs() as f64) < s { (s - m as f64, s) } else { (-(a.abs() as f64), a.abs() as f64) };
    let mut r = b.rem_euclid(m);
    let k = ((lo - r as f64) / m as f64).floor() as i64 + 1;
    r += k * m;
    while (r as f64) <= lo {
        r += m;
    }
    while (r - m) as f64 > lo {
        r -= m;
    }
    r
}

pub fn rho(d: i64, (_, b, c): (i64, i64, i64)) -> (i64, i64, i64) {
    let nb = normalize(d, c, -b);
    (c, nb, (nb * nb - d) / (4 * c))
}

pub fn reduce(d: i64, mut q: (i64, i64, i64)) -> (i64, i64, i64) {
    for _ in 0..10_000 {
        if reduced(d, q) {
            return q;
        }
        q = rho(d, q);
    }
    panic!("Gauss reduction did not terminate for {q:?}");
}

/// The ρ-cycle of a reduced form, as a sorted set.
pub fn cycle_of(d: i64, q: (i64, i64, i64)) -> Vec<(i64, i64, i64)> {
    let start = reduce(d, q);
    let mut out = vec![start];
    let mut cur = rho(d, start);
    while cur != start {
        out.push(cur);
        cur = rho(d, cur);
    }
    out.sort();
    out
}

/// Every reduced form of discriminant `d` by brute force.
pub fn all_reduced(d: i64) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    for b in 1..=((d as f64).sqrt() as i64) {
        if (b * b - d) % 4 != 0 {
            continue;
        }
        let n = (b * b - d) / 4;
        for a in -d..=d {
            if a != 0 && n % a == 0 && reduced(d, (a, b, n / a)) {
                out.push((a, b, n / a));
            }
        }
    }
    out
}
