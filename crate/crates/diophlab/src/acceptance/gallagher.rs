use diophlab_core::numbers::ratio;
use diophlab_core::sums::{dyadic_grid, gallagher_counter, ApproxFunction};
use diophlab_core::{BigRational, RealSpec};

use super::{ensure, Ctx, Level, Recorder};

/// Totals and wins of the divergent-vs-convergent run at N = 10^5, from
/// the exact integer oracle.
pub const REFERENCE: (u64, u64, usize) = (3042, 1668, 486);
const CONTRAST_N: u64 = 100_000;
const CONTRAST_SHARE: f64 = 0.95;

fn counts(psi: &ApproxFunction, grid: &[BigRational], n: u64) -> Result<Vec<u64>, String> {
    let r = gallagher_counter(&[], &[RealSpec::zero()], psi, grid, n).ctx("counter")?;
    ensure(r.undecided.is_empty(), || {
        format!("{} comparisons left open", r.undecided.len())
    })?;
    Ok(r.counts)
}

fn pointwise_le(a: &[u64], b: &[u64]) -> Result<(), String> {
    match a.iter().zip(b).position(|(x, y)| x > y) {
        Some(i) => Err(format!("grid point {i}: {} > {}", a[i], b[i])),
        None => Ok(()),
    }
}

pub(super) fn run(rec: &mut Recorder, level: Level) {
    let grid = dyadic_grid();
    let divergent = ApproxFunction::Reciprocal(ratio(1, 4));
    let larger = ApproxFunction::Reciprocal(ratio(1, 2));
    let convergent = ApproxFunction::ReciprocalSquare(ratio(1, 1));
    let (small, big) = match level {
        Level::Fast => (1_000, 10_000),
        Level::Full => (10_000, CONTRAST_N),
    };
    let mut at_big = None;
    rec.part("monotone in N", || {
        let a = counts(&divergent, &grid, small)?;
        let b = counts(&divergent, &grid, big)?;
        pointwise_le(&a, &b)?;
        let msg = format!(
            "N = {small} -> {big}: totals {} -> {}",
            a.iter().sum::<u64>(),
            b.iter().sum::<u64>()
        );
        at_big = Some(b);
        Ok(msg)
    });
    rec.part("monotone in psi", || {
        let a = counts(&divergent, &grid, small)?;
        let b = counts(&larger, &grid, small)?;
        pointwise_le(&a, &b)?;
        Ok(format!(
            "1/(4n) -> 1/(2n) at N = {small}: totals {} -> {}",
            a.iter().sum::<u64>(),
            b.iter().sum::<u64>()
        ))
    });
    if level == Level::Fast {
        return;
    }
    let conv = counts(&convergent, &grid, CONTRAST_N);
    let div = match at_big {
        Some(d) => Ok(d),
        None => counts(&divergent, &grid, CONTRAST_N),
    };
    let wins = match (&div, &conv) {
        (Ok(d), Ok(c)) => Ok(d.iter().zip(c).filter(|(x, y)| x > y).count()),
        (Err(e), _) | (_, Err(e)) => Err(e.clone()),
    };
    rec.part("reference run", || {
        let (d, c, w) = (div.clone()?, conv.clone()?, wins.clone()?);
        let got = (d.iter().sum::<u64>(), c.iter().sum::<u64>(), w);
        ensure(got == REFERENCE, || {
            format!("got {got:?}, stored {REFERENCE:?}")
        })?;
        Ok(format!(
            "divergent total {}, convergent total {}, wins {}",
            got.0, got.1, got.2
        ))
    });
    rec.part("contrast", || {
        let w = wins.clone()?;
        let share = w as f64 / grid.len() as f64;
        ensure(share >= CONTRAST_SHARE, || {
            format!(
                "divergent count larger on {w}/{} points ({:.1}%), target {:.0}%",
                grid.len(),
                100.0 * share,
                100.0 * CONTRAST_SHARE
            )
        })?;
        Ok(format!("{w}/{} points ({:.1}%)", grid.len(), 100.0 * share))
    });
}
