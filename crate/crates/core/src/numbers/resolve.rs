//! Threshold decisions by successive refinement.
//!
//! Step `i` of a budget asks for width `2^-(64 + 64 i)`. A decision that is
//! still open after the last step becomes [`Error::Undecidable`].

use alloc::format;
use core::cmp::Ordering;

use super::{pow2_inv, BigRational, Enclosure};
use crate::error::{Error, Result};

/// Number of refinement steps allowed per decision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub steps: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { steps: 8 }
    }
}

impl Budget {
    pub fn new(steps: u32) -> Result<Self> {
        if steps == 0 {
            return Err(Error::param("refinement budget must be positive"));
        }
        Ok(Budget { steps })
    }

    /// Target width at step `i`.
    pub fn width(&self, i: u32) -> BigRational {
        pow2_inv(64 + 64 * i)
    }

    pub fn finest(&self) -> BigRational {
        self.width(self.steps - 1)
    }
}

/// Runs `attempt` at each width until it returns `Some`.
pub fn resolve<T>(
    budget: &Budget,
    mut attempt: impl FnMut(&BigRational) -> Result<Option<T>>,
) -> Result<T> {
    for i in 0..budget.steps {
        if let Some(v) = attempt(&budget.width(i))? {
            return Ok(v);
        }
    }
    Err(Error::undecidable(format!(
        "no decision after {} refinement steps",
        budget.steps
    )))
}

/// Certified `x` vs `threshold`, where `eval(w)` encloses `x` to width `w`.
/// `Equal` is returned only when some enclosure is the exact point.
pub fn resolve_cmp(
    mut eval: impl FnMut(&BigRational) -> Result<Enclosure>,
    threshold: &BigRational,
    budget: &Budget,
) -> Result<Ordering> {
    resolve(budget, |w| Ok(eval(w)?.cmp_rational(threshold)))
}
