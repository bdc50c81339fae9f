//! Properties of form reduction, cycles, Pell solutions and genus
//! characters, with class counts checked against Gauss's reduction theory.

use std::collections::BTreeSet;

use cyclelift::bqf::{class_representatives, cycle, genus_char, pell, reduce, reduced_forms, Matrix2, QuadraticForm};
use cyclelift::exactmath::FundamentalDiscriminant;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use proptest::prelude::*;

mod common;
use common::gauss;

fn is_square(n: i64) -> bool {
    let r = (n as f64).sqrt().round() as i64;
    r * r == n
}

fn nonsquare_discriminants(max: i64) -> impl Iterator<Item = i64> {
    (2..=max).filter(|d| matches!(d % 4, 0 | 1) && !is_square(*d))
}

fn to_i64(q: &QuadraticForm) -> (i64, i64, i64) {
    ((&q.a).try_into().unwrap(), (&q.b).try_into().unwrap(), (&q.c).try_into().unwrap())
}

#[test]
fn class_partition_matches_gauss_cycles() {
    for d in nonsquare_discriminants(100) {
        let mut cycles: BTreeSet<Vec<_>> = BTreeSet::new();
        for q in gauss::all_reduced(d) {
            cycles.insert(gauss::cycle_of(d, q));
        }
        let reps = class_representatives(d).unwrap();
        assert_eq!(reps.len(), cycles.len(), "class count for D = {d}");
        let hit: BTreeSet<_> = reps.iter().map(|q| gauss::cycle_of(d, to_i64(q))).collect();
        assert_eq!(hit, cycles, "representatives of D = {d} are not pairwise inequivalent");
    }
}

#[test]
fn reduced_forms_match_exhaustive_search() {
    for d in nonsquare_discriminants(100) {
        let mut brute = Vec::new();
        for a in 1..=d {
            for c in 1..=d {
                for b in 1..=d + 1 {
                    if b * b - 4 * a * c == d && b > a + c {
                        brute.push(QuadraticForm::new(a, b, c));
                    }
                }
            }
        }
        brute.sort();
        assert_eq!(reduced_forms(d).unwrap(), brute, "D = {d}");
    }
}

#[test]
fn square_classes() {
    for s in 1..=10i64 {
        let reps = class_representatives(s * s).unwrap();
        assert_eq!(reps.len() as i64, s);
        assert!(reps.iter().all(|q| q.discriminant() == BigInt::from(s * s)));
    }
    assert_eq!(class_representatives(4).unwrap(), vec![QuadraticForm::new(0, 2, 0), QuadraticForm::new(0, 2, 1)]);
}

#[test]
fn pell_is_minimal_by_search() {
    for d in nonsquare_discriminants(200) {
        let (t, u) = pell(&BigInt::from(d)).unwrap();
        assert_eq!(&t * &t - BigInt::from(d) * &u * &u, BigInt::from(4), "D = {d}");
        assert!(t.is_positive() && u.is_positive());
        let limit: i128 = u.clone().min(BigInt::from(200_000)).try_into().unwrap();
        for v in 1..limit {
            let t2 = 4 + d as i128 * v * v;
            let r = (t2 as f64).sqrt().round() as i128;
            assert!((r - 1..=r + 1).all(|x| x * x != t2), "D = {d}: smaller solution u = {v}");
        }
    }
    assert_eq!(pell(&BigInt::from(8)).unwrap(), (BigInt::from(6), BigInt::from(2)));
    assert_eq!(pell(&BigInt::from(5)).unwrap(), (BigInt::from(3), BigInt::from(1)));
}

#[test]
fn cycles_close_up_and_match_automorphs() {
    for d in nonsquare_discriminants(200) {
        for q in class_representatives(d).unwrap() {
            let cyc = cycle(&q).unwrap();
            let p = cyc.product();
            assert!(p.det().is_one());
            assert_eq!(q.compose(&p), q, "cycle product of {q} is not an automorph");
            let a = q.automorph().unwrap();
            assert_eq!(q.compose(&a), q);
            assert!(a.det().is_one());
            if q.content().is_one() {
                assert_eq!(p, a, "primitive {q}: cycle product differs from the Pell automorph");
            }
            for f in &cyc.forms {
                assert!(f.is_reduced() && f.discriminant() == BigInt::from(d));
            }
        }
    }
}

fn sl2() -> impl Strategy<Value = Matrix2> {
    // words in T^n and S
    prop::collection::vec(-4i64..=4, 1..6).prop_map(|ns| {
        ns.iter()
            .fold(Matrix2::identity(), |acc, &n| acc.mul(&Matrix2::new(1, n, 0, 1)).mul(&Matrix2::new(0, -1, 1, 0)))
    })
}

fn form() -> impl Strategy<Value = QuadraticForm> {
    (-30i64..=30, -30i64..=30, -30i64..=30)
        .prop_filter("positive non-square discriminant", |&(a, b, c)| {
            let d = b * b - 4 * a * c;
            d > 0 && !is_square(d)
        })
        .prop_map(|(a, b, c)| QuadraticForm::new(a, b, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn discriminant_is_invariant(q in form(), m in sl2()) {
        prop_assert_eq!(q.compose(&m).discriminant(), q.discriminant());
    }

    #[test]
    fn reduce_returns_an_equivalent_reduced_form(q in form()) {
        let (r, m) = reduce(&q).unwrap();
        prop_assert!(r.is_reduced());
        prop_assert!(m.det().is_one());
        prop_assert_eq!(q.compose(&m), r.clone());
        let d: i64 = (&q.discriminant()).try_into().unwrap();
        prop_assert_eq!(gauss::cycle_of(d, to_i64(&q)), gauss::cycle_of(d, to_i64(&r)));
    }

    #[test]
    fn equivalent_forms_reduce_into_one_cycle(q in form(), m in sl2()) {
        let (r1, _) = reduce(&q).unwrap();
        let (r2, _) = reduce(&q.compose(&m)).unwrap();
        prop_assert!(cycle(&r1).unwrap().forms.contains(&r2));
    }

    #[test]
    fn genus_character_is_a_class_invariant(q in form(), m in sl2(), d1 in prop::sample::select(vec![1i64, -3, -4, 5, -7, 8, -8, 12, 13])) {
        let disc = q.discriminant();
        let d1v = BigInt::from(d1);
        let split = disc.is_multiple_of(&d1v) && matches!(i64::try_from((&disc / &d1v).mod_floor(&BigInt::from(4))), Ok(0 | 1));
        prop_assume!(split);
        let fd = FundamentalDiscriminant::new(d1).unwrap();
        prop_assert_eq!(genus_char(fd, &q).unwrap(), genus_char(fd, &q.compose(&m)).unwrap());
    }
}
