use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{floor, ratio, to_decimal, BigRational};

/// A closed rational interval `[lo, hi]` certified to contain some real.
///
/// The width `hi - lo` is the error bound. A degenerate enclosure
/// (`lo == hi`) is an exact value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Enclosure {
    lo: BigRational,
    hi: BigRational,
}

impl Enclosure {
    /// Panics if `lo > hi`.
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "enclosure with lo > hi");
        Enclosure { lo, hi }
    }

    /// Orders the endpoints.
    pub fn hull(a: BigRational, b: BigRational) -> Self {
        if a <= b {
            Enclosure { lo: a, hi: b }
        } else {
            Enclosure { lo: b, hi: a }
        }
    }

    pub fn point(x: BigRational) -> Self {
        Enclosure {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn zero() -> Self {
        Self::point(BigRational::zero())
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn into_bounds(self) -> (BigRational, BigRational) {
        (self.lo, self.hi)
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&BigRational::zero())
    }

    pub fn is_subset_of(&self, other: &Enclosure) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn intersects(&self, other: &Enclosure) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersection(&self, other: &Enclosure) -> Option<Enclosure> {
        let lo = if self.lo >= other.lo {
            &self.lo
        } else {
            &other.lo
        };
        let hi = if self.hi <= other.hi {
            &self.hi
        } else {
            &other.hi
        };
        (lo <= hi).then(|| Enclosure::new(lo.clone(), hi.clone()))
    }

    /// Smallest enclosure containing both.
    pub fn join(&self, other: &Enclosure) -> Enclosure {
        let lo = if self.lo <= other.lo {
            &self.lo
        } else {
            &other.lo
        };
        let hi = if self.hi >= other.hi {
            &self.hi
        } else {
            &other.hi
        };
        Enclosure::new(lo.clone(), hi.clone())
    }

    /// Certified comparison with a rational. `None` when `x` lies inside a
    /// non-degenerate enclosure; `Some(Equal)` only for an exact match.
    pub fn cmp_rational(&self, x: &BigRational) -> Option<Ordering> {
        if self.hi < *x {
            Some(Ordering::Less)
        } else if self.lo > *x {
            Some(Ordering::Greater)
        } else if self.is_point() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Certified comparison of two enclosed values.
    pub fn cmp_enclosure(&self, other: &Enclosure) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else if self.is_point() && other.is_point() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// `Some(sign)` when the sign is certified.
    pub fn sign(&self) -> Option<Ordering> {
        self.cmp_rational(&BigRational::zero())
    }

    pub fn abs(&self) -> Enclosure {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            -self.clone()
        } else {
            let m = if -&self.lo >= self.hi {
                -&self.lo
            } else {
                self.hi.clone()
            };
            Enclosure::new(BigRational::zero(), m)
        }
    }

    pub fn scale(&self, k: &BigRational) -> Enclosure {
        Enclosure::hull(&self.lo * k, &self.hi * k)
    }

    pub fn shift(&self, k: &BigRational) -> Enclosure {
        Enclosure::new(&self.lo + k, &self.hi + k)
    }

    /// `1/x`; `None` if the enclosure contains zero.
    pub fn recip(&self) -> Option<Enclosure> {
        if self.contains_zero() {
            return None;
        }
        Some(Enclosure::hull(self.hi.recip(), self.lo.recip()))
    }

    /// Fractional part `{x}` when `floor` is constant on the enclosure.
    pub fn frac(&self) -> Option<Enclosure> {
        let f = floor(&self.lo);
        if floor(&self.hi) != f {
            return None;
        }
        let fr = BigRational::from_integer(f);
        Some(Enclosure::new(&self.lo - &fr, &self.hi - &fr))
    }

    /// Enclosure of `‖x‖`, the distance to the nearest integer, over all
    /// `x` in `self`. The result lies in `[0, 1/2]` and is never wider.
    pub fn dist_nearest_integer(&self) -> Enclosure {
        let f = BigRational::from_integer(floor(&self.lo));
        let lo = &self.lo - &f;
        let hi = &self.hi - &f;
        let half = ratio(1, 2);
        let one = BigRational::one();
        let d = |x: &BigRational| -> BigRational {
            // x >= 0; reduce to [0, 1) then fold.
            let fx = x - BigRational::from_integer(floor(x));
            let other = &one - &fx;
            if fx <= other {
                fx
            } else {
                other
            }
        };
        let contains_integer = lo.is_zero() || hi >= one;
        let contains_half = (lo <= half && half <= hi) || hi >= &one + &half;
        let (dlo, dhi) = (d(&lo), d(&hi));
        let min = if contains_integer {
            BigRational::zero()
        } else if dlo <= dhi {
            dlo.clone()
        } else {
            dhi.clone()
        };
        let max = if contains_half {
            half
        } else if dlo >= dhi {
            dlo
        } else {
            dhi
        };
        Enclosure::new(min, max)
    }

    /// Decimal rendering `[lo, hi]` rounded outward.
    pub fn to_decimal(&self, digits: u32) -> (alloc::string::String, alloc::string::String) {
        (
            to_decimal(&self.lo, digits, false),
            to_decimal(&self.hi, digits, true),
        )
    }

    /// Widens the endpoints outward onto the grid `2^-bits · Z`, which keeps
    /// denominators bounded across long sums.
    pub fn round_outward(&self, bits: u32) -> Enclosure {
        let den = BigInt::one() << bits as usize;
        let lo = BigRational::new(super::scaled(&self.lo, bits, false), den.clone());
        let hi = BigRational::new(super::scaled(&self.hi, bits, true), den);
        Enclosure { lo, hi }
    }

    pub fn mul_int(&self, n: &BigInt) -> Enclosure {
        self.scale(&BigRational::from_integer(n.clone()))
    }
}

impl Add for &Enclosure {
    type Output = Enclosure;
    fn add(self, rhs: &Enclosure) -> Enclosure {
        Enclosure::new(&self.lo + &rhs.lo, &self.hi + &rhs.hi)
    }
}

impl Add for Enclosure {
    type Output = Enclosure;
    fn add(self, rhs: Enclosure) -> Enclosure {
        &self + &rhs
    }
}

impl Sub for &Enclosure {
    type Output = Enclosure;
    fn sub(self, rhs: &Enclosure) -> Enclosure {
        Enclosure::new(&self.lo - &rhs.hi, &self.hi - &rhs.lo)
    }
}

impl Sub for Enclosure {
    type Output = Enclosure;
    fn sub(self, rhs: Enclosure) -> Enclosure {
        &self - &rhs
    }
}

impl Neg for Enclosure {
    type Output = Enclosure;
    fn neg(self) -> Enclosure {
        Enclosure {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl Mul for &Enclosure {
    type Output = Enclosure;
    fn mul(self, rhs: &Enclosure) -> Enclosure {
        let c = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let mut lo = &c[0];
        let mut hi = &c[0];
        for x in &c[1..] {
            if x < lo {
                lo = x;
            }
            if x > hi {
                hi = x;
            }
        }
        Enclosure::new(lo.clone(), hi.clone())
    }
}

impl Mul for Enclosure {
    type Output = Enclosure;
    fn mul(self, rhs: Enclosure) -> Enclosure {
        &self * &rhs
    }
}

impl From<BigRational> for Enclosure {
    fn from(x: BigRational) -> Self {
        Enclosure::point(x)
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "[{}]", self.lo)
        } else {
            let (lo, hi) = self.to_decimal(24);
            write!(f, "[{lo}, {hi}]")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::int;

    fn e(lo: (i64, i64), hi: (i64, i64)) -> Enclosure {
        Enclosure::new(ratio(lo.0, lo.1), ratio(hi.0, hi.1))
    }

    #[test]
    fn dist_of_exact_quarter() {
        let q = Enclosure::point(ratio(1, 4));
        assert_eq!(q.dist_nearest_integer(), q);
    }

    #[test]
    fn dist_across_half() {
        let d = e((49, 100), (51, 100)).dist_nearest_integer();
        assert_eq!(d, e((49, 100), (1, 2)));
    }

    #[test]
    fn dist_across_integer() {
        let d = e((29, 10), (31, 10)).dist_nearest_integer();
        assert_eq!(d, e((0, 1), (1, 10)));
    }

    #[test]
    fn dist_of_negative_values() {
        let d = e((-13, 10), (-12, 10)).dist_nearest_integer();
        assert_eq!(d, e((2, 10), (3, 10)));
        let d = Enclosure::point(ratio(-7, 3)).dist_nearest_integer();
        assert_eq!(d, Enclosure::point(ratio(1, 3)));
    }

    #[test]
    fn dist_of_wide_interval_is_full_range() {
        let d = e((-3, 1), (5, 1)).dist_nearest_integer();
        assert_eq!(d, e((0, 1), (1, 2)));
    }

    #[test]
    fn arithmetic_and_comparisons() {
        let a = e((1, 1), (2, 1));
        let b = e((-1, 1), (3, 1));
        assert_eq!(&a * &b, e((-2, 1), (6, 1)));
        assert_eq!(&a - &b, e((-2, 1), (3, 1)));
        assert_eq!(a.cmp_rational(&int(3)), Some(Ordering::Less));
        assert_eq!(a.cmp_rational(&ratio(3, 2)), None);
        assert_eq!(b.abs(), e((0, 1), (3, 1)));
        assert!(b.recip().is_none());
        assert_eq!(a.recip().unwrap(), e((1, 2), (1, 1)));
        assert_eq!(e((7, 2), (15, 4)).frac().unwrap(), e((1, 2), (3, 4)));
        assert!(e((7, 2), (4, 1)).frac().is_none());
    }
}
