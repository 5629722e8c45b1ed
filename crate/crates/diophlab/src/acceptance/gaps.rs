use num_integer::Integer;
use rand::Rng;

use diophlab_core::bohr::{count_divisible_in_gap, enumerate_gap, Gap, GapShape};

use super::{ensure, rng, Ctx, Level, Recorder};

pub(super) fn run(rec: &mut Recorder, level: Level, seed: u64) {
    let target = match level {
        Level::Fast => 50,
        Level::Full => 200,
    };
    rec.part("count within 4 N_1..N_k / min N_i", || {
        let mut rng = rng(seed, 7);
        let (mut tested, mut rejected, mut worst) = (0, 0, 0.0f64);
        while tested < target {
            let k = rng.random_range(1..=3);
            let a: Vec<i64> = (0..k).map(|_| rng.random_range(1..=5_000)).collect();
            let n: Vec<u64> = (0..k).map(|_| rng.random_range(1..=50)).collect();
            let b = rng.random_range(-1_000..=1_000);
            let d = rng.random_range(1..=100u64);
            let g = Gap::new(b, a.clone(), n.clone(), GapShape::ProperAsymmetric).ctx("gap")?;
            if a.iter().fold(0, |x, &y| x.gcd(&y)) != 1
                || !enumerate_gap(&g).ctx("enumerate")?.proper
            {
                rejected += 1;
                continue;
            }
            let r = count_divisible_in_gap(&g, d).ctx("count")?;
            let mut brute = 0;
            g.for_each(|m| brute += u64::from(m.rem_euclid(d as i64) == 0))
                .ctx("scan")?;
            ensure(brute == r.count, || {
                format!(
                    "A = {a:?}, N = {n:?}, d = {d}: count {} vs scan {brute}",
                    r.count
                )
            })?;
            ensure(r.within(4), || {
                format!(
                    "A = {a:?}, N = {n:?}, b = {b}, d = {d}: defect {} > 4 · {}",
                    r.defect, r.scale
                )
            })?;
            worst = worst.max(diophlab_core::numbers::to_f64(&(&r.defect / &r.scale)));
            tested += 1;
        }
        Ok(format!(
            "{tested} proper GAPs ({rejected} draws rejected), largest defect/scale {worst:.3}"
        ))
    });
}
