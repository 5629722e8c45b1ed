use rand::Rng;
use rand_chacha::ChaCha8Rng;

use diophlab_core::measure::{
    divergence_sum, measure_bound_holds, overlap_matrix_sum, ApproxSet, Family, Filter, IntervalSet,
};
use diophlab_core::numbers::{self, ceil, ratio, to_f64, QuadraticSurd};
use diophlab_core::shiftred::Eta;
use diophlab_core::sums::{ApproxFunction, XiRule};
use diophlab_core::{BigRational, RealSpec};

use super::{ensure, rng, Ctx, Level, Recorder};

/// Overlap ratio of the √2 fixture at X = 2000, from the float oracle run.
pub const BC_REFERENCE: f64 = 0.862_635_3;
const BC_X: u64 = 2_000;

fn random_set(rng: &mut ChaCha8Rng) -> IntervalSet {
    let den = rng.random_range(1..=64i64);
    let count = rng.random_range(0..=6);
    IntervalSet::from_intervals((0..count).map(|_| {
        let lo = rng.random_range(-2..=den);
        let len = rng.random_range(0..=den / 2 + 1);
        (ratio(lo, den), ratio(lo + len, den))
    }))
}

fn sqrt2() -> RealSpec {
    RealSpec::Surd(QuadraticSurd::sqrt(2).expect("surd"))
}

pub(super) fn run(rec: &mut Recorder, level: Level, seed: u64) {
    let (pairs, x_bound) = match level {
        Level::Fast => (100, 300),
        Level::Full => (1_000, 2_000),
    };
    rec.part("inclusion-exclusion", || {
        let mut rng = rng(seed, 10);
        for i in 0..pairs {
            let (s, t) = (random_set(&mut rng), random_set(&mut rng));
            let lhs = s.union(&t).measure() + s.intersect(&t).measure();
            let rhs = s.measure() + t.measure();
            ensure(lhs == rhs, || format!("pair {i}: {lhs} != {rhs}"))?;
        }
        Ok(format!("{pairs} pairs, exact"))
    });

    rec.part("bound past the window threshold", || {
        let window = (ratio(1, 4), ratio(3, 4));
        let threshold =
            BigRational::from_integer(ceil(&(numbers::int(2) / (&window.1 - &window.0))));
        let psi_fn = ApproxFunction::Reciprocal(ratio(1, 4));
        let psi = |n: u64| psi_fn.eval(n);
        let hat = |n: u64| n;
        let family = Family {
            alphas: vec![sqrt2()],
            gammas: vec![RealSpec::rational(1, 3)],
            gamma: RealSpec::rational(1, 5),
            window: window.clone(),
            filter: Filter::None,
            hat: &hat,
            psi: &psi,
        };
        let sets = family.sets(x_bound).ctx("sets")?;
        let mut checked = 0;
        for (i, (set, big)) in sets.iter().enumerate() {
            let n = i as u64 + 1;
            if BigRational::from_integer(n.into()) < threshold {
                continue;
            }
            ensure(measure_bound_holds(set, big, &window, 3), || {
                format!("n = {n}: μ(E_n) = {}", set.measure())
            })?;
            checked += 1;
        }
        Ok(format!("{checked} sets, n̂ >= {threshold}"))
    });

    rec.part("overlap ratio fixture", || {
        let psi_fn = ApproxFunction::ReciprocalLogSquare { c: ratio(1, 4), xi: XiRule::One };
        let psi = |n: u64| psi_fn.eval(n);
        let hat = |n: u64| n;
        let family = Family {
            alphas: vec![sqrt2()],
            gammas: vec![RealSpec::zero()],
            gamma: RealSpec::zero(),
            window: (BigRational::from_integer(0.into()), BigRational::from_integer(1.into())),
            filter: Filter::ShiftReduced(Eta::new(1, 2).ctx("eta")?),
            hat: &hat,
            psi: &psi,
        };
        let sets = family.sets(BC_X).ctx("sets")?;
        let div = divergence_sum(&family, &sets).ctx("divergence")?;
        let only: Vec<ApproxSet> = sets.into_iter().map(|s| s.0).collect();
        let r = overlap_matrix_sum(&only).ctx("overlaps")?;
        let bc = r.bc_ratio.ok_or("overlap sum vanishes")?;
        let (lo, hi) = (to_f64(bc.lo()), to_f64(bc.hi()));
        ensure(lo >= 0.9 * BC_REFERENCE && hi <= 1.1 * BC_REFERENCE, || {
            format!("ratio in [{lo:.7}, {hi:.7}], reference {BC_REFERENCE}")
        })?;
        let dr = div.ratio.map(|e| format!("{:.4}", to_f64(&e.midpoint()))).unwrap_or_else(|| "n/a".into());
        Ok(format!("X = {BC_X}: ratio in [{lo:.7}, {hi:.7}], reference {BC_REFERENCE}; divergence ratio {dr}"))
    });
}
