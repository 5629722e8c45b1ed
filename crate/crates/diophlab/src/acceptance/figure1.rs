use std::time::Instant;

use diophlab_core::numbers::to_f64_directed;
use diophlab_core::sums::{figure1, figure1_alphas, log_avg_sum_exact, log_avg_sum_float};
use diophlab_core::RealSpec;

use super::{ensure, Ctx, Level, Recorder};

const H: u64 = 1_000_000;
const C_BAND: (f64, f64) = (1.717, 1.752);

pub(super) fn run(rec: &mut Recorder, level: Level) {
    let alphas = figure1_alphas();
    let gammas = vec![RealSpec::zero(); alphas.len()];
    rec.part("fit", || {
        let t = Instant::now();
        let f = figure1(H, &alphas, &gammas, 10_000).ctx("figure1")?;
        let secs = t.elapsed().as_secs_f64();
        ensure(f.c >= C_BAND.0 && f.c <= C_BAND.1, || {
            format!("c = {:.5} outside [{}, {}]", f.c, C_BAND.0, C_BAND.1)
        })?;
        ensure(secs <= 60.0, || format!("took {secs:.1} s"))?;
        Ok(format!(
            "H = 10^6, c = {:.5} ± {:.1e}, {secs:.2} s",
            f.c,
            f.s.err * f.c / f.s.value
        ))
    });
    let points: &[u64] = match level {
        Level::Fast => &[1_000],
        Level::Full => &[1_000, 10_000],
    };
    for &n in points {
        rec.part(&format!("spot check N = {n}"), || {
            let fl = log_avg_sum_float(n, &alphas, &gammas).ctx("float sum")?;
            let ex = log_avg_sum_exact(1..=n, &alphas, &gammas)
                .ctx("exact sum")?
                .ok_or("exact sum is infinite")?;
            let (lo, hi) = (
                to_f64_directed(ex.lo(), false),
                to_f64_directed(ex.hi(), true),
            );
            ensure(lo <= fl.hi() && hi >= fl.lo(), || {
                format!("exact [{lo}, {hi}] misses float {} ± {}", fl.value, fl.err)
            })?;
            Ok(format!(
                "float {:.12} ± {:.1e}, exact in [{lo:.12}, {hi:.12}]",
                fl.value, fl.err
            ))
        });
    }
}
