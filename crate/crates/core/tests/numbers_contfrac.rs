use diophlab_core::contfrac::{
    cf_of_rational, convergents, d_value, evaluate, omega_estimate, ContinuedFraction,
};
use diophlab_core::numbers::{dist_nearest_integer, int, pow10_inv, ratio, QuadraticSurd};
use diophlab_core::{Enclosure, RealSpec};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use proptest::prelude::*;

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn rationals_enclose_exactly() {
    let e = RealSpec::rational(3, 7).enclose(&pow10_inv(3)).unwrap();
    assert!(e.is_point());
    assert_eq!(e.lo(), &ratio(3, 7));
}

#[test]
fn sqrt2_enclosure_brackets_the_root() {
    let e = RealSpec::Surd(QuadraticSurd::sqrt(2).unwrap())
        .enclose(&pow10_inv(6))
        .unwrap();
    assert!(e.width() <= pow10_inv(6));
    assert!(e.lo() * e.lo() < int(2));
    assert!(e.hi() * e.hi() > int(2));
}

#[test]
fn golden_enclosure_sits_between_fibonacci_quotients() {
    let cf = ContinuedFraction::named("golden").unwrap();
    let e = cf.enclose(&pow10_inv(3)).unwrap();
    let t = convergents(&cf, 30).unwrap();
    let hit = (1..30).any(|j| {
        let (a, b) = (t.convergent(j), t.convergent(j + 1));
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        &lo <= e.lo() && e.hi() <= &hi
    });
    assert!(hit);
}

#[test]
fn distance_to_the_nearest_integer() {
    let d = |lo, hi| dist_nearest_integer(&Enclosure::new(lo, hi));
    assert_eq!(d(ratio(1, 4), ratio(1, 4)), Enclosure::point(ratio(1, 4)));
    assert_eq!(
        d(ratio(49, 100), ratio(51, 100)),
        Enclosure::new(ratio(49, 100), ratio(1, 2))
    );
    assert_eq!(
        d(ratio(29, 10), ratio(31, 10)),
        Enclosure::new(int(0), ratio(1, 10))
    );
}

#[test]
fn rational_expansions() {
    assert_eq!(cf_of_rational(&int(3)).quotients(0).unwrap(), ints(&[3]));
    assert_eq!(
        cf_of_rational(&ratio(355, 113)).quotients(2).unwrap(),
        ints(&[3, 7, 16])
    );
    assert_eq!(
        cf_of_rational(&ratio(1, 2)).quotients(1).unwrap(),
        ints(&[0, 2])
    );
}

#[test]
fn convergent_tables() {
    let golden = ContinuedFraction::named("golden_conjugate").unwrap();
    assert_eq!(
        convergents(&golden, 6).unwrap().q,
        ints(&[1, 1, 2, 3, 5, 8, 13])
    );
    let pi = ContinuedFraction::exact(ints(&[3, 7, 16])).unwrap();
    let t = convergents(&pi, 2).unwrap();
    assert_eq!(t.p, ints(&[3, 22, 355]));
    assert_eq!(t.q, ints(&[1, 7, 113]));
    assert!(convergents(&pi, 3).is_err());
    let e = convergents(&ContinuedFraction::named("e").unwrap(), 0).unwrap();
    assert_eq!(
        (e.p[0].clone(), e.q[0].clone()),
        (BigInt::from(2), BigInt::one())
    );
}

#[test]
fn error_terms() {
    let w = pow10_inv(30);
    let golden = ContinuedFraction::named("golden_conjugate").unwrap();
    let alpha = RealSpec::Stream(golden.clone());
    let d3 = d_value(&golden, &alpha, 3, &w).unwrap();
    assert!(d3.scaled.lo() >= &ratio(1, 2) && d3.scaled.hi() <= &int(1));

    let sqrt2 = RealSpec::Surd(QuadraticSurd::sqrt(2).unwrap());
    let cf = sqrt2.continued_fraction();
    let d0 = d_value(&cf, &sqrt2, 0, &w).unwrap();
    assert_eq!(d0.sign, 1);
    let d1 = d_value(&cf, &sqrt2, 1, &w).unwrap();
    assert_eq!(d1.sign, -1);
    // 2√2 − 3 = −0.171572875...
    assert!(
        d1.value.contains(&ratio(-171_572_875, 1_000_000_000))
            || d1.value.hi() < &ratio(-17157, 100_000)
    );
}

#[test]
fn omega_proxies() {
    let golden = ContinuedFraction::named("golden_conjugate").unwrap();
    let r = omega_estimate(&golden, 20).unwrap();
    assert!(r < ratio(3, 2));
    let rapid = ContinuedFraction::named("rapid").unwrap();
    assert!(omega_estimate(&rapid, 5).unwrap() >= int(2));
    let s = omega_estimate(&ContinuedFraction::named("const:2").unwrap(), 20).unwrap();
    assert!(s <= ratio(6, 5));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_roundtrip(n in -10_000i64..10_000, d in 1i64..10_000) {
        let r = ratio(n, d);
        let cf = cf_of_rational(&r);
        prop_assert_eq!(evaluate(&cf).unwrap(), r);
        if let Some(t) = cf.last_index().filter(|&t| t >= 1) {
            prop_assert!(cf.quotient(t).unwrap() > BigInt::one());
        }
    }

    #[test]
    fn convergent_recursion(a0 in -5i64..5, partials in proptest::collection::vec(1i64..30, 1..20)) {
        let mut v = vec![a0];
        v.extend(&partials);
        let cf = ContinuedFraction::prefix(ints(&v)).unwrap();
        let j = partials.len();
        let t = convergents(&cf, j).unwrap();
        prop_assert_eq!(&t.q[0], &BigInt::one());
        prop_assert_eq!(&t.q[1], &BigInt::from(partials[0]));
        for i in 0..=j {
            prop_assert!(t.p[i].gcd(&t.q[i]).is_one());
            if i >= 2 {
                prop_assert_eq!(&t.q[i], &(&t.a[i] * &t.q[i - 1] + &t.q[i - 2]));
                prop_assert_eq!(&t.p[i], &(&t.a[i] * &t.p[i - 1] + &t.p[i - 2]));
                prop_assert!(t.q[i] > t.q[i - 1]);
            }
        }
    }

    #[test]
    fn refinement_is_monotone(d in 2u64..200, bits in 4u32..60) {
        prop_assume!(!diophlab_core::numbers::is_perfect_square(&d.into()));
        let x = RealSpec::Surd(QuadraticSurd::sqrt(d).unwrap());
        let w = diophlab_core::numbers::pow2_inv(bits);
        let coarse = x.enclose(&w).unwrap();
        let fine = x.enclose(&(&w / int(2))).unwrap();
        prop_assert!(fine.width() <= coarse.width());
        prop_assert!(fine.lo() * fine.lo() <= int(d) && fine.hi() * fine.hi() >= int(d));
        let dist = dist_nearest_integer(&coarse);
        prop_assert!(dist.width() <= coarse.width());
        prop_assert!(!dist.lo().is_negative() && dist.hi() <= &ratio(1, 2));
    }
}
