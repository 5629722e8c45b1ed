use diophlab_core::bohr::bohr_cardinality_check;
use diophlab_core::numbers::{ratio, Budget, QuadraticSurd};
use diophlab_core::RealSpec;

use super::{ensure, Ctx, Level, Recorder};

pub(super) fn run(rec: &mut Recorder, _level: Level) {
    let alpha = RealSpec::Surd(QuadraticSurd::sqrt(2).expect("surd"));
    let budget = Budget::default();
    for n in [1_000u64, 10_000] {
        rec.part(&format!("N = {n}"), || {
            let mut met = Vec::new();
            for den in [50, 200, 800] {
                let r = bohr_cardinality_check(&alpha, &ratio(1, den), n, &budget)
                    .ctx(format!("delta = 1/{den}"))?;
                if r.hypothesis_met {
                    ensure(r.bounds_hold(), || {
                        format!(
                            "delta = 1/{den}: #B = {} outside [{}, {}]",
                            r.count, r.lower, r.upper
                        )
                    })?;
                    met.push(format!("1/{den}: #B = {}", r.count));
                }
            }
            Ok(if met.is_empty() {
                "hypothesis not met for any delta".into()
            } else {
                met.join(", ")
            })
        });
    }
}
