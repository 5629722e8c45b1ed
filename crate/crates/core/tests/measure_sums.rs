use diophlab_core::measure::{
    build_approx_set, density_profile, overlap_matrix_sum, ApproxSetSpec, Filter, IntervalSet,
    PsiValue,
};
use diophlab_core::numbers::{int, ratio, to_f64, QuadraticSurd};
use diophlab_core::shiftred::Eta;
use diophlab_core::sums::{
    dyadic_ratio_check, figure1, figure1_alphas, gallagher_counter, log_avg_sum_exact,
    log_avg_sum_float, max_log, phi_big, ApproxFunction, PhiValue,
};
use diophlab_core::{BigRational, RealSpec};
use proptest::prelude::*;

fn spec(hat: u64, psi: BigRational) -> ApproxSetSpec {
    ApproxSetSpec::new(hat, RealSpec::zero(), PsiValue::Exact(psi))
}

#[test]
fn empty_when_psi_vanishes() {
    let s = build_approx_set(&spec(7, int(0))).unwrap();
    assert!(s.inner.is_empty());
}

#[test]
fn halves_example() {
    // (−1/16, 1/16) ∪ (7/16, 9/16) ∪ (15/16, 17/16) clipped to [0, 1]
    let s = build_approx_set(&spec(2, ratio(1, 8))).unwrap();
    assert_eq!(s.inner.measure(), ratio(1, 4));
    let left = s
        .inner
        .intersect(&IntervalSet::interval(int(0), ratio(1, 2)));
    assert_eq!(left.measure(), ratio(1, 8));
    assert_eq!(density_profile(&s.inner, 4).unwrap(), ratio(1, 4));
    assert_eq!(density_profile(&IntervalSet::unit(), 5).unwrap(), int(1));
    assert_eq!(density_profile(&IntervalSet::empty(), 5).unwrap(), int(0));
}

#[test]
fn zero_shift_filter_keeps_coprime_numerators() {
    let mut s = spec(12, ratio(1, 100));
    s.filter = Filter::ShiftReduced(Eta::new(1, 2).unwrap());
    let e = build_approx_set(&s).unwrap();
    assert_eq!(e.admissible, 4);
    for (lo, hi) in e.inner.intervals() {
        let centre = (lo + hi) / int(2) * int(12);
        let a = centre.round().to_integer();
        assert_eq!(num_integer::Integer::gcd(&a, &12.into()), 1.into());
    }
}

#[test]
fn huge_psi_saturates() {
    let s = build_approx_set(&spec(3, ratio(3, 2))).unwrap();
    assert_eq!(s.inner.measure(), int(1));
}

#[test]
fn overlap_ratios() {
    // (Σ μ)² / Σ μ(E ∩ E) = μ(E) for one set
    let single = build_approx_set(&spec(5, ratio(1, 20))).unwrap();
    let mu = single.inner.measure();
    assert_eq!(
        overlap_matrix_sum(&[single])
            .unwrap()
            .bc_ratio
            .unwrap()
            .lo(),
        &mu
    );
    let disjoint: Vec<_> = (0..4)
        .map(|i| {
            let s = IntervalSet::interval(ratio(i, 4), ratio(2 * i + 1, 8));
            diophlab_core::measure::ApproxSet {
                inner: s.clone(),
                outer: s,
                admissible: 1,
            }
        })
        .collect();
    assert_eq!(
        overlap_matrix_sum(&disjoint)
            .unwrap()
            .bc_ratio
            .unwrap()
            .lo(),
        &ratio(1, 2)
    );
}

#[test]
fn max_log_convention() {
    assert_eq!(max_log(1.0).unwrap(), 1.0);
    assert_eq!(max_log(std::f64::consts::E).unwrap(), 1.0);
    assert!((max_log(std::f64::consts::E.powi(2)).unwrap() - 2.0).abs() < 1e-15);
    assert!(max_log(0.0).is_err());
}

#[test]
fn phi_values() {
    let third = [RealSpec::rational(1, 3)];
    let zero = [RealSpec::zero()];
    let psi = ApproxFunction::Reciprocal(int(1));
    assert_eq!(phi_big(3, &third, &zero, &psi).unwrap(), PhiValue::Infinite);
    let sqrt2 = [RealSpec::Surd(QuadraticSurd::sqrt(2).unwrap())];
    let PhiValue::Finite(e) = phi_big(10, &sqrt2, &zero, &psi).unwrap() else {
        panic!("finite")
    };
    let x = 10.0 * 2f64.sqrt();
    let float = 0.1 / (x - x.round()).abs();
    assert!((to_f64(&e.midpoint()) - float).abs() < 1e-9);
}

#[test]
fn log_averaged_sums() {
    let alphas = figure1_alphas();
    let gammas = vec![RealSpec::zero(); 2];
    let one = log_avg_sum_exact(1..=1, &alphas, &gammas).unwrap().unwrap();
    let a1 = 0.957363115715396f64;
    let a2 = 0.3049448415027476f64;
    let hand = 1.0 / ((1.0 - a1) * a2);
    assert!((to_f64(&one.midpoint()) - hand).abs() < 1e-9);
    let f = log_avg_sum_float(1_000, &alphas, &gammas).unwrap();
    let e = log_avg_sum_exact(1..=1_000, &alphas, &gammas)
        .unwrap()
        .unwrap();
    assert!(f.lo() <= to_f64(e.hi()) && to_f64(e.lo()) <= f.hi());
}

#[test]
fn figure1_single_point() {
    let alphas = figure1_alphas();
    let gammas = vec![RealSpec::zero(); 2];
    let f = figure1(1, &alphas, &gammas, 1).unwrap();
    let s1 = log_avg_sum_float(1, &alphas, &gammas).unwrap();
    assert!(s1.contains(f.c));
    let f = figure1(2_000, &alphas, &gammas, 100).unwrap();
    assert!(f.rows.windows(2).all(|w| w[0].s <= w[1].s));
}

#[test]
fn gallagher_extremes() {
    let grid = vec![ratio(1, 3), ratio(5, 7)];
    let sqrt2 = vec![RealSpec::Surd(QuadraticSurd::sqrt(2).unwrap())];
    let gammas = vec![RealSpec::zero(); 2];
    let all = gallagher_counter(
        &sqrt2,
        &gammas,
        &ApproxFunction::Constant(int(1)),
        &grid,
        50,
    )
    .unwrap();
    assert!(all.counts.iter().all(|&c| c == 50));
    let none = gallagher_counter(
        &sqrt2,
        &gammas,
        &ApproxFunction::Constant(int(0)),
        &grid,
        50,
    )
    .unwrap();
    assert!(none.counts.iter().all(|&c| c == 0));
}

#[test]
fn dyadic_truncation() {
    let n = 1 << 16;
    let flat: Vec<f64> = vec![1.0; n as usize + 1];
    assert!(dyadic_ratio_check(&flat, 2, 0.0, 1, n).unwrap().in_band());
    let recip: Vec<f64> = (0..=n)
        .map(|k| if k == 0 { 1.0 } else { 1.0 / k as f64 })
        .collect();
    assert!(dyadic_ratio_check(&recip, 2, 1.0, 1, n).unwrap().in_band());
}

fn set(parts: &[(i64, i64, i64)]) -> IntervalSet {
    IntervalSet::from_intervals(
        parts
            .iter()
            .map(|&(lo, len, den)| (ratio(lo, den), ratio(lo + len, den))),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn inclusion_exclusion(
        s in proptest::collection::vec((-4i64..40, 0i64..20, 1i64..40), 0..6),
        t in proptest::collection::vec((-4i64..40, 0i64..20, 1i64..40), 0..6),
    ) {
        let (s, t) = (set(&s), set(&t));
        prop_assert_eq!(s.union(&t).measure() + s.intersect(&t).measure(), s.measure() + t.measure());
        prop_assert!(s.intersect(&t).measure() <= s.measure().min(t.measure()));
        prop_assert!(s.measure() <= int(1));
    }

    #[test]
    fn narrow_sets_do_not_merge(hat in 1u64..200, k in 3i64..50) {
        let psi = ratio(1, 2 * hat as i64 + k);
        let e = build_approx_set(&spec(hat, psi.clone())).unwrap();
        let len = &psi * int(2) / int(hat as i64);
        let interior = e.inner.intervals().iter().filter(|(lo, hi)| hi - lo == len).count();
        prop_assert_eq!(interior + 2, e.admissible);
    }
}
