//! Fast certified evaluation of `‖nα − γ‖` for many `n`.
//!
//! Rational inputs with a combined denominator below `2^62` are handled
//! with exact `i128` residues. Irrational inputs are pre-enclosed once on a
//! `2^-96` grid, which keeps `n·α` inside `i128` for `|n| <= 2^30`. Anything
//! else, and any comparison the grid cannot settle, goes through
//! `BigRational` enclosures and the resolve protocol.

use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use super::{floor, int, pow2_inv, resolve, scaled, BigRational, Budget, Enclosure, RealSpec};
use crate::error::Result;

const BITS: u32 = 96;
const MAX_SCALED_N: i64 = 1 << 30;

/// `lo/den <= ‖nα − γ‖ <= hi/den` with integer numerators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DistanceBound {
    pub lo: i128,
    pub hi: i128,
    pub den: i128,
}

impl DistanceBound {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// Certified comparison with `r`; `None` if `r` falls inside the bound.
    pub fn cmp_rational(&self, r: &BigRational) -> Option<Ordering> {
        let rn = r.numer();
        let rd = r.denom();
        let c = |x: i128| -> Ordering {
            match (rn.to_i64(), rd.to_i64()) {
                (Some(n), Some(d)) if n.unsigned_abs() < 1 << 62 && d < 1 << 62 => {
                    // x < 2^97, d < 2^62 would overflow; split via i128 only when safe
                    let lhs = x.checked_mul(d as i128);
                    let rhs = (n as i128).checked_mul(self.den);
                    match (lhs, rhs) {
                        (Some(l), Some(r)) => l.cmp(&r),
                        _ => (BigInt::from(x) * rd).cmp(&(rn * BigInt::from(self.den))),
                    }
                }
                _ => (BigInt::from(x) * rd).cmp(&(rn * BigInt::from(self.den))),
            }
        };
        let hi = c(self.hi);
        if hi == Ordering::Less {
            return Some(Ordering::Less);
        }
        let lo = c(self.lo);
        if lo == Ordering::Greater {
            return Some(Ordering::Greater);
        }
        if self.is_exact() {
            return Some(lo);
        }
        None
    }

    pub fn to_enclosure(&self) -> Enclosure {
        let d = BigInt::from(self.den);
        Enclosure::new(
            BigRational::new(self.lo.into(), d.clone()),
            BigRational::new(self.hi.into(), d),
        )
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo as f64 / self.den as f64
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi as f64 / self.den as f64
    }
}

#[derive(Clone, Debug)]
enum Mode {
    Exact {
        a: i128,
        g: i128,
        den: i128,
    },
    Scaled {
        a_lo: i128,
        a_hi: i128,
        g_lo: i128,
        g_hi: i128,
    },
    Big,
}

/// Evaluator for `n ↦ ‖nα − γ‖` with fixed `α`, `γ`.
#[derive(Clone, Debug)]
pub struct OrbitDistance {
    alpha: RealSpec,
    gamma: RealSpec,
    mode: Mode,
}

fn frac_grid(x: &RealSpec) -> Result<Option<(i128, i128)>> {
    let e = x.enclose(&pow2_inv(BITS + 8))?;
    let Some(f) = e.frac() else { return Ok(None) };
    let lo = scaled(f.lo(), BITS, false).to_i128();
    let hi = scaled(f.hi(), BITS, true).to_i128();
    Ok(lo.zip(hi))
}

/// Folds a grid interval `[lo, hi]` (scale `s`) to a bound on `‖·‖`.
fn fold(lo: i128, hi: i128, s: i128) -> (i128, i128) {
    let k = lo.div_euclid(s);
    let (lo, hi) = (lo - k * s, hi - k * s);
    let half = s / 2;
    let d = |x: i128| {
        let r = x.rem_euclid(s);
        r.min(s - r)
    };
    let contains_integer = lo == 0 || hi >= s;
    let contains_half = (lo <= half && half <= hi) || hi >= s + half;
    let (dl, dh) = (d(lo), d(hi));
    let min = if contains_integer { 0 } else { dl.min(dh) };
    let max = if contains_half { half } else { dl.max(dh) };
    (min, max)
}

impl OrbitDistance {
    pub fn new(alpha: RealSpec, gamma: RealSpec) -> Result<Self> {
        let mode = match (alpha.as_rational(), gamma.as_rational()) {
            (Some(a), Some(g)) => {
                let den = a.denom().lcm(g.denom());
                match den.to_i128() {
                    Some(d) if d < 1 << 62 => {
                        let an = (a.numer() * (&den / a.denom())).mod_floor(&den);
                        let gn = (g.numer() * (&den / g.denom())).mod_floor(&den);
                        Mode::Exact {
                            a: an.to_i128().unwrap(),
                            g: gn.to_i128().unwrap(),
                            den: d,
                        }
                    }
                    _ => Mode::Big,
                }
            }
            _ => match (frac_grid(&alpha)?, frac_grid(&gamma)?) {
                (Some((a_lo, a_hi)), Some((g_lo, g_hi))) => Mode::Scaled {
                    a_lo,
                    a_hi,
                    g_lo,
                    g_hi,
                },
                _ => Mode::Big,
            },
        };
        Ok(OrbitDistance { alpha, gamma, mode })
    }

    pub fn alpha(&self) -> &RealSpec {
        &self.alpha
    }

    pub fn gamma(&self) -> &RealSpec {
        &self.gamma
    }

    /// Integer-only bound, when the fast paths apply to `n`.
    pub fn fast(&self, n: i64) -> Option<DistanceBound> {
        match self.mode {
            Mode::Exact { a, g, den } => {
                let r = ((n as i128) * a - g).rem_euclid(den);
                let d = r.min(den - r);
                // store as 2d / 2den so that 1/2 stays integral
                Some(DistanceBound {
                    lo: 2 * d,
                    hi: 2 * d,
                    den: 2 * den,
                })
            }
            Mode::Scaled {
                a_lo,
                a_hi,
                g_lo,
                g_hi,
            } if n.abs() <= MAX_SCALED_N => {
                let n = n as i128;
                let (lo, hi) = if n >= 0 {
                    (n * a_lo - g_hi, n * a_hi - g_lo)
                } else {
                    (n * a_hi - g_hi, n * a_lo - g_lo)
                };
                let (lo, hi) = fold(lo, hi, 1i128 << BITS);
                Some(DistanceBound {
                    lo,
                    hi,
                    den: 1i128 << BITS,
                })
            }
            _ => None,
        }
    }

    /// Enclosure of `‖nα − γ‖` of width at most `width`.
    pub fn enclose(&self, n: &BigInt, width: &BigRational) -> Result<Enclosure> {
        if let Mode::Exact { .. } = self.mode {
            if let Some(b) = n.to_i64().and_then(|n| self.fast(n)) {
                return Ok(b.to_enclosure());
            }
        }
        let scale = int(n.abs() + BigInt::one()) * int(2);
        let a = self.alpha.enclose(&(width / &scale))?;
        let g = self.gamma.enclose(&(width / int(2)))?;
        let x = &a.mul_int(n) - &g;
        Ok(x.dist_nearest_integer())
    }

    /// Certified comparison of `‖nα − γ‖` with `rho`.
    pub fn cmp(&self, n: i64, rho: &BigRational, budget: &Budget) -> Result<Ordering> {
        if let Some(o) = self.fast(n).and_then(|b| b.cmp_rational(rho)) {
            return Ok(o);
        }
        let nb = BigInt::from(n);
        resolve::resolve_cmp(|w| self.enclose(&nb, w), rho, budget)
    }

    /// `‖nα − γ‖ = 0` exactly (only possible for rational inputs).
    pub fn is_zero(&self, n: i64) -> bool {
        match self.mode {
            Mode::Exact { .. } => self.fast(n).map(|b| b.hi == 0).unwrap_or(false),
            _ => match (self.alpha.as_rational(), self.gamma.as_rational()) {
                (Some(a), Some(g)) => {
                    let x = a * int(n) - g;
                    x == int(floor(&x))
                }
                _ => false,
            },
        }
    }

    /// Any certified enclosure, preferring the integer paths.
    pub fn bound(&self, n: i64) -> Result<Enclosure> {
        match self.fast(n) {
            Some(b) => Ok(b.to_enclosure()),
            None => self.enclose(&BigInt::from(n), &pow2_inv(128)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::{ratio, QuadraticSurd};
    use proptest::prelude::*;

    #[test]
    fn exact_residues() {
        let o = OrbitDistance::new(RealSpec::rational(1, 3), RealSpec::zero()).unwrap();
        assert!(o.is_zero(3));
        assert_eq!(
            o.fast(1).unwrap().to_enclosure(),
            Enclosure::point(ratio(1, 3))
        );
        assert_eq!(
            o.cmp(1, &ratio(1, 3), &Budget::default()).unwrap(),
            Ordering::Equal
        );
        assert_eq!(
            o.fast(-2).unwrap().to_enclosure(),
            Enclosure::point(ratio(1, 3))
        );
    }

    #[test]
    fn half_is_representable() {
        let o = OrbitDistance::new(RealSpec::rational(1, 2), RealSpec::zero()).unwrap();
        assert_eq!(
            o.fast(1).unwrap().to_enclosure(),
            Enclosure::point(ratio(1, 2))
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn scaled_path_contains_true_value(n in -100_000i64..100_000, gn in 0i64..1000, d in 2u64..50) {
            prop_assume!(!crate::numbers::is_perfect_square(&d.into()));
            let alpha = RealSpec::Surd(QuadraticSurd::sqrt(d).unwrap());
            let gamma = RealSpec::rational(gn, 1000);
            let o = OrbitDistance::new(alpha, gamma).unwrap();
            let fast = o.fast(n).unwrap().to_enclosure();
            let slow = o.enclose(&BigInt::from(n), &pow2_inv(200)).unwrap();
            prop_assert!(slow.is_subset_of(&fast));
            prop_assert!(fast.width() < pow2_inv(70));
        }

        #[test]
        fn exact_path_matches_rational_arithmetic(n in -10_000i64..10_000, an in -50i64..50, ad in 1i64..97, gn in -50i64..50, gd in 1i64..31) {
            let o = OrbitDistance::new(RealSpec::rational(an, ad), RealSpec::rational(gn, gd)).unwrap();
            let x = Enclosure::point(ratio(an, ad) * int(n) - ratio(gn, gd)).dist_nearest_integer();
            prop_assert_eq!(o.fast(n).unwrap().to_enclosure(), x);
        }
    }
}
