//! Natural logarithms in `f64` with a stated error, and the `max(ln x, 1)`
//! convention used throughout.
//!
//! For a positive integer `n = m · 2^e` with `m` the top 64 bits,
//! `ln n = ln m + e ln 2`. The absolute error of [`ln_biguint`] is at most
//! [`ln_margin`] of the result, which is below `1e-9` for `n < 2^(10^6)`.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};

use super::{next_down, next_up, BigRational, Enclosure};
use crate::error::{Error, Result};

fn split(n: &BigUint) -> (f64, u64) {
    let bits = n.bits();
    if bits <= 64 {
        (n.to_u64().unwrap_or(u64::MAX) as f64, 0)
    } else {
        let shift = bits - 64;
        let top: BigUint = n >> shift as usize;
        (top.to_u64().unwrap_or(u64::MAX) as f64, shift)
    }
}

/// `ln n`, `n >= 1`.
pub fn ln_biguint(n: &BigUint) -> f64 {
    let (m, e) = split(n);
    libm::log(m) + e as f64 * core::f64::consts::LN_2
}

/// Absolute error bound for [`ln_biguint`] at a result of size `v` with
/// binary exponent shift `e`.
pub fn ln_margin(v: f64, e: u64) -> f64 {
    let ulp = next_up(v.abs()) - v.abs();
    4.0 * ulp + (e as f64 + 4.0) * f64::EPSILON / 4.0 + f64::EPSILON
}

pub fn ln_bigint(n: &BigInt) -> f64 {
    ln_biguint(n.magnitude())
}

/// `max(ln n, 1)`.
pub fn max_log_bigint(n: &BigInt) -> f64 {
    max_log(ln_bigint(n))
}

/// `max(x, 1)` applied to an already computed natural logarithm.
fn max_log(ln_x: f64) -> f64 {
    if ln_x < 1.0 {
        1.0
    } else {
        ln_x
    }
}

/// `max(ln x, 1)` for a positive float.
pub fn max_log_f64(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::param("log of a non-positive number"));
    }
    Ok(max_log(libm::log(x)))
}

/// `max(ln n, 1)` for a positive integer given as `u64`.
pub fn max_log_u64(n: u64) -> f64 {
    max_log(libm::log(n as f64))
}

/// Rational enclosure of `ln r`, `r > 0`.
pub fn ln_enclosure(r: &BigRational) -> Result<Enclosure> {
    if !r.is_positive() {
        return Err(Error::param("log of a non-positive number"));
    }
    let (n, d) = (r.numer().magnitude(), r.denom().magnitude());
    let (_, en) = split(n);
    let (_, ed) = split(d);
    let ln = ln_biguint(n) - ln_biguint(d);
    let m = ln_margin(ln_biguint(n), en)
        + ln_margin(ln_biguint(d), ed)
        + 2.0 * (next_up(ln.abs()) - ln.abs());
    let lo = next_down(ln - m);
    let hi = next_up(ln + m);
    Ok(Enclosure::new(
        BigRational::from_float(lo).unwrap_or_else(BigRational::zero),
        BigRational::from_float(hi).unwrap_or_else(BigRational::zero),
    ))
}

/// Rational enclosure of `max(ln r, 1)`.
pub fn max_log_enclosure(r: &BigRational) -> Result<Enclosure> {
    let e = ln_enclosure(r)?;
    let one = BigRational::from_integer(1.into());
    let lo = if *e.lo() < one {
        one.clone()
    } else {
        e.lo().clone()
    };
    let hi = if *e.hi() < one { one } else { e.hi().clone() };
    Ok(Enclosure::new(lo, hi))
}
