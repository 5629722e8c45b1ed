//! Exact arithmetic substrate.
//!
//! Rationals are `num_rational::BigRational`. Irrationals are never
//! evaluated in floating point: they are described by a [`RealSpec`] and
//! turned into two-sided rational [`Enclosure`]s of any requested width.

mod enclosure;
pub mod log;
pub mod orbit;
pub mod resolve;
mod spec;

pub use enclosure::Enclosure;
pub use num_rational::BigRational;
pub use orbit::{DistanceBound, OrbitDistance};
pub use resolve::Budget;
pub use spec::{enclose, QuadraticSurd, RealSpec};

use alloc::string::String;
use core::fmt::Write;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `‖x‖` for every `x` in `e`: distance to the nearest integer.
pub fn dist_nearest_integer(e: &Enclosure) -> Enclosure {
    e.dist_nearest_integer()
}

/// `n/d` as an exact rational.
pub fn ratio(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// The integer `n` as a rational.
pub fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `2^-bits` as a rational.
pub fn pow2_inv(bits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << bits as usize)
}

/// `10^-digits` as a rational.
pub fn pow10_inv(digits: u32) -> BigRational {
    BigRational::new(
        BigInt::one(),
        num_traits::pow(BigInt::from(10u32), digits as usize),
    )
}

pub fn floor(r: &BigRational) -> BigInt {
    r.numer().div_floor(r.denom())
}

pub fn ceil(r: &BigRational) -> BigInt {
    -((-r.numer()).div_floor(r.denom()))
}

/// Largest `s` with `s*s <= n`.
pub fn isqrt(n: &BigUint) -> BigUint {
    n.sqrt()
}

pub fn is_perfect_square(n: &BigUint) -> bool {
    let s = n.sqrt();
    &s * &s == *n
}

/// `floor(r * 2^bits)` or `ceil(r * 2^bits)`.
pub fn scaled(r: &BigRational, bits: u32, round_up: bool) -> BigInt {
    let num = r.numer() << bits as usize;
    if round_up {
        -((-num).div_floor(r.denom()))
    } else {
        num.div_floor(r.denom())
    }
}

/// Nearest `f64` at or below (`round_up = false`) / above the rational.
pub fn to_f64_directed(r: &BigRational, round_up: bool) -> f64 {
    let v = to_f64(r);
    let back = BigRational::from_float(v);
    match back {
        Some(b) => {
            if round_up && b < *r {
                next_up(v)
            } else if !round_up && b > *r {
                next_down(v)
            } else {
                v
            }
        }
        None => v,
    }
}

/// Nearest-ish `f64` of a rational; exact to within a couple of ulps.
pub fn to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let neg = r.is_negative();
    let n = r.numer().magnitude();
    let d = r.denom().magnitude();
    // Shift so that the integer quotient carries 64 significant bits.
    let shift = n.bits() as i64 - d.bits() as i64 - 64;
    let q = if shift >= 0 {
        n / (d << shift as usize)
    } else {
        (n << (-shift) as usize) / d
    };
    let digits = q.to_u64_digits();
    let top = digits
        .iter()
        .rev()
        .fold(0f64, |acc, &w| acc * 18446744073709551616.0 + w as f64);
    let v = libm::ldexp(top, shift as i32);
    if neg {
        -v
    } else {
        v
    }
}

pub(crate) fn next_up(x: f64) -> f64 {
    if x.is_nan() || x == f64::INFINITY {
        return x;
    }
    if x == 0.0 {
        return f64::from_bits(1);
    }
    let bits = x.to_bits();
    if x > 0.0 {
        f64::from_bits(bits + 1)
    } else {
        f64::from_bits(bits - 1)
    }
}

pub(crate) fn next_down(x: f64) -> f64 {
    -next_up(-x)
}

/// Decimal rendering with `digits` places after the point, rounded toward
/// minus infinity (`round_up = false`) or plus infinity.
pub fn to_decimal(r: &BigRational, digits: u32, round_up: bool) -> String {
    let scale = num_traits::pow(BigInt::from(10u32), digits as usize);
    let num = r.numer() * &scale;
    let q = if round_up {
        -((-num).div_floor(r.denom()))
    } else {
        num.div_floor(r.denom())
    };
    let (sign, mag) = match q.sign() {
        Sign::Minus => ("-", q.magnitude().clone()),
        _ => ("", q.magnitude().clone()),
    };
    let s = mag.to_str_radix(10);
    let mut out = String::new();
    let _ = write!(out, "{sign}");
    if digits == 0 {
        out.push_str(&s);
        return out;
    }
    let d = digits as usize;
    if s.len() <= d {
        out.push_str("0.");
        for _ in 0..(d - s.len()) {
            out.push('0');
        }
        out.push_str(&s);
    } else {
        out.push_str(&s[..s.len() - d]);
        out.push('.');
        out.push_str(&s[s.len() - d..]);
    }
    out
}
