use diophlab_core::contfrac::d_value;
use diophlab_core::numbers::{pow2_inv, ratio};

use super::threegap::reference_cfs;
use super::{ensure, Ctx, Level, Recorder};

const J_MAX: usize = 25;

pub(super) fn run(rec: &mut Recorder, level: Level, seed: u64) {
    let count = match level {
        Level::Fast => 10,
        Level::Full => 50,
    };
    let cfs = reference_cfs(seed, count, 10);
    let (half, one) = (ratio(1, 2), ratio(1, 1));
    let width = pow2_inv(80);
    rec.part("bounds and alternation", || {
        for r in &cfs {
            let mut prev = 0i8;
            for j in 0..=J_MAX {
                let d = d_value(&r.cf, &r.alpha, j, &width).ctx(format!("{} j = {j}", r.name))?;
                let want = if j % 2 == 0 { 1 } else { -1 };
                ensure(d.sign == want && d.sign != prev, || {
                    format!("{} j = {j}: sign {}", r.name, d.sign)
                })?;
                ensure(*d.scaled.lo() >= half && *d.scaled.hi() <= one, || {
                    format!("{} j = {j}: |D_j| q_(j+1) in {}", r.name, d.scaled)
                })?;
                prev = d.sign;
            }
        }
        Ok(format!("{} expansions, j <= {J_MAX}", cfs.len()))
    });
}
