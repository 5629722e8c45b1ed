use diophlab_core::contfrac::{convergents, ContinuedFraction};
use diophlab_core::numbers::{pow2_inv, ratio, QuadraticSurd};
use diophlab_core::ostrowski::{
    certify_pair, cylinder_elements, ostrowski_decode, ostrowski_encode, sharpness_construct,
    sigma_decompose, OstrowskiDigits, Schedule,
};
use diophlab_core::threegap::{brute_gaps, find_small_shift, gap_decomposition, largest_gap};
use diophlab_core::RealSpec;
use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

fn digits(v: &[u32]) -> Vec<BigUint> {
    v.iter().map(|&x| BigUint::from(x)).collect()
}

fn golden() -> ContinuedFraction {
    ContinuedFraction::named("golden_conjugate").unwrap()
}

#[test]
fn golden_four() {
    // q = 1, 1, 2, 3: greedy takes 3, then 1 = q_1, and c_1 < a_1 = 1 forces c_1 = 0.
    let d = ostrowski_encode(&BigUint::from(4u32), &golden()).unwrap();
    assert_eq!(d.digits, digits(&[0, 1, 0, 1]));
    assert_eq!(
        ostrowski_decode(&d, &golden()).unwrap(),
        BigUint::from(4u32)
    );
}

#[test]
fn convergent_denominators_are_single_digits() {
    let cf = ContinuedFraction::named("e").unwrap();
    let t = convergents(&cf, 8).unwrap();
    for k in 1..=8 {
        let n = t.q[k].to_biguint().unwrap();
        let d = ostrowski_encode(&n, &cf).unwrap();
        let ones: Vec<usize> = d
            .digits
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != BigUint::ZERO)
            .map(|(i, _)| i)
            .collect();
        assert_eq!(ones, [k], "n = q_{k}");
    }
}

#[test]
fn below_the_first_quotient() {
    let cf = ContinuedFraction::named("const:5").unwrap();
    let d = ostrowski_encode(&BigUint::from(4u32), &cf).unwrap();
    assert_eq!(d.digits, digits(&[4]));
}

#[test]
fn invalid_digits_are_rejected() {
    let bad = OstrowskiDigits {
        digits: digits(&[1]),
    };
    assert!(ostrowski_decode(&bad, &golden()).is_err());
    assert!(cylinder_elements(&digits(&[1]), &golden(), 3).is_err());
}

#[test]
fn cylinder_gaps_with_quotient_three() {
    let cf = ContinuedFraction::named("const:3").unwrap();
    let got = cylinder_elements(&digits(&[1]), &cf, 4).unwrap();
    let brute: Vec<BigUint> = (1u32..200)
        .map(BigUint::from)
        .filter(|n| ostrowski_encode(n, &cf).unwrap().digits[0] == BigUint::from(1u32))
        .take(4)
        .collect();
    assert_eq!(got, brute);
}

#[test]
fn threegap_decompositions() {
    let g = gap_decomposition(5, &golden()).unwrap();
    assert_eq!(
        (g.k, g.r.clone(), g.s.clone()),
        (3, BigInt::from(1), BigInt::from(0))
    );
    let c2 = ContinuedFraction::named("const:2").unwrap();
    let g = gap_decomposition(1, &c2).unwrap();
    assert_eq!(
        (g.k, g.r.clone(), g.s.clone()),
        (0, BigInt::from(1), BigInt::from(0))
    );
    let e = ContinuedFraction::named("e").unwrap();
    let t = convergents(&e, 7).unwrap();
    for k in 2..=7 {
        let m = u64::try_from(&t.q[k]).unwrap();
        let g = gap_decomposition(m, &e).unwrap();
        assert_eq!(
            (g.k, g.r.clone(), g.s.clone()),
            (k - 1, t.a[k].clone(), BigInt::from(0)),
            "m = q_{k}"
        );
    }
}

#[test]
fn largest_gap_matches_sorting() {
    let alpha = RealSpec::Surd(QuadraticSurd::sqrt(2).unwrap());
    let cf = alpha.continued_fraction();
    let w = pow2_inv(100);
    for m in [1, 2, 10, 29, 100] {
        let f = largest_gap(m, &alpha, &cf, &w).unwrap();
        let b = brute_gaps(m, &alpha, &w).unwrap();
        assert!(f.intersects(b.max()), "m = {m}");
        assert!(b.three_distance());
    }
}

#[test]
fn rational_rotation_shows_the_denominator_gap() {
    let b = brute_gaps(9, &RealSpec::rational(2, 7), &pow2_inv(40)).unwrap();
    assert!(b.gaps.iter().any(|g| g.contains(&ratio(1, 7))));
}

#[test]
fn small_shifts() {
    let sqrt2 = RealSpec::Surd(QuadraticSurd::sqrt(2).unwrap());
    let cf = sqrt2.continued_fraction();
    for t in 1..=6 {
        let s = find_small_shift(t, &cf, &RealSpec::rational(1, 2)).unwrap();
        assert!(s.b >= 1 && s.b <= s.q_t);
        assert!(s.distance.hi() <= &ratio(2, s.q_t as i64));
        let z = find_small_shift(t, &cf, &RealSpec::zero()).unwrap();
        assert!(z.distance.hi() <= &ratio(2, z.q_t as i64));
    }
}

#[test]
fn constructed_pairs() {
    let p = sharpness_construct(&[false, false], Schedule::Factorial, 2).unwrap();
    assert!(certify_pair(&p).is_ok());
    let p = sharpness_construct(&[true], Schedule::Relaxed, 1).unwrap();
    assert_eq!(
        p.gamma.b_with(1, &BigUint::from(64u32)),
        BigUint::from(16u32)
    );
    let p = sharpness_construct(&[false; 6], Schedule::Relaxed, 6).unwrap();
    assert!(certify_pair(&p).is_ok());
    let w = pow2_inv(120);
    for n in [1u32, 2, 31, 33, 1000, 4097] {
        let s = sigma_decompose(&BigUint::from(n), &p, &w).unwrap();
        assert!(s.distance.lo() > &ratio(0, 1), "n = {n}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn roundtrip(n in 1u64..100_000, rule in prop::sample::select(vec!["golden", "sqrt2", "e", "const:4"])) {
        let cf = ContinuedFraction::named(rule).unwrap();
        let n = BigUint::from(n);
        let d = ostrowski_encode(&n, &cf).unwrap();
        prop_assert_eq!(ostrowski_decode(&d, &cf).unwrap(), n);
    }
}
