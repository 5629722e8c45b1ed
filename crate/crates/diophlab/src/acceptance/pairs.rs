use num_bigint::BigUint;

use diophlab_core::numbers::pow10_inv;
use diophlab_core::ostrowski::{certify_pair, sharpness_construct, Schedule, SigmaEngine};

use super::{ensure, Ctx, Level, Recorder};

const T: bool = true;
const F: bool = false;

pub(super) fn run(rec: &mut Recorder, level: Level) {
    let all: [(&[bool], Schedule, usize); 5] = [
        (&[F, T], Schedule::Factorial, 2),
        (&[F, F, F, F], Schedule::Relaxed, 4),
        (&[T, F, T, F], Schedule::Relaxed, 4),
        (&[T, T, F, F, T], Schedule::Relaxed, 5),
        (&[F, T, T], Schedule::Relaxed, 3),
    ];
    let (count, n_max) = match level {
        Level::Fast => (2, 500u32),
        Level::Full => (5, 10_000),
    };
    let target = pow10_inv(30);
    let width = pow10_inv(32);
    for (sigma, schedule, depth) in all.into_iter().take(count) {
        let name = format!(
            "{schedule:?} depth {depth} sigma {}",
            sigma
                .iter()
                .map(|&s| if s { '1' } else { '0' })
                .collect::<String>()
        );
        rec.part(&name.to_lowercase(), || {
            let pair = sharpness_construct(sigma, schedule, depth).ctx("construct")?;
            certify_pair(&pair).ctx("certify")?;
            let mut engine =
                SigmaEngine::new(&pair, &width, &BigUint::from(n_max)).ctx("engine")?;
            for n in 1..=n_max {
                let s = engine
                    .decompose(&BigUint::from(n))
                    .ctx(format!("n = {n}"))?;
                ensure(s.distance.intersects(&s.direct), || {
                    format!("n = {n}: routes disagree")
                })?;
                ensure(
                    s.distance.width() <= target && s.direct.width() <= target,
                    || format!("n = {n}: enclosure too wide"),
                )?;
            }
            Ok(format!(
                "0 < α < 1/64 and 0 <= γ < 1 − α certified; n <= {n_max} agree"
            ))
        });
    }
}
