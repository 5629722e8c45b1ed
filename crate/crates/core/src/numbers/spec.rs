use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{is_perfect_square, isqrt, BigRational, Enclosure};
use crate::contfrac::{cf_of_rational, ContinuedFraction};
use crate::error::{Error, Result};

/// `a + b·√d` with rational `a, b` and a positive nonsquare integer `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticSurd {
    a: BigRational,
    b: BigRational,
    d: BigUint,
}

impl QuadraticSurd {
    pub fn new(a: BigRational, b: BigRational, d: BigUint) -> Result<Self> {
        if d.is_zero() || is_perfect_square(&d) {
            return Err(Error::param(format!(
                "surd radicand {d} must be a positive nonsquare"
            )));
        }
        Ok(QuadraticSurd { a, b, d })
    }

    /// `√d`.
    pub fn sqrt(d: u64) -> Result<Self> {
        Self::new(BigRational::zero(), BigRational::one(), BigUint::from(d))
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn d(&self) -> &BigUint {
        &self.d
    }

    /// Nested dyadic enclosure of `√d` followed by the affine map. Doubling
    /// the scale only ever shrinks the interval, so refinement is monotone.
    pub fn enclose(&self, width: &BigRational) -> Enclosure {
        if self.b.is_zero() {
            return Enclosure::point(self.a.clone());
        }
        // need |b| / 2^k <= width
        let need = self.b.abs() / width;
        let c = super::ceil(&need);
        let k = c.bits() as usize;
        let s = isqrt(&(&self.d << (2 * k)));
        let den = BigInt::one() << k;
        let lo = BigRational::new(BigInt::from_biguint(Sign::Plus, s.clone()), den.clone());
        let hi = BigRational::new(BigInt::from_biguint(Sign::Plus, s + 1u32), den);
        Enclosure::hull(&self.a + &self.b * lo, &self.a + &self.b * hi)
    }

    /// Exact periodic continued fraction, using the `(P + √E)/Q` recursion.
    pub fn continued_fraction(&self) -> ContinuedFraction {
        if self.b.is_zero() {
            return cf_of_rational(&self.a);
        }
        // a + b√d = (P + √E) / Q
        let (a1, a2) = (self.a.numer().clone(), self.a.denom().clone());
        let (b1, b2) = (self.b.numer().clone(), self.b.denom().clone());
        let s = if b1.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        let mut p = &s * &a1 * &b2;
        let mut q = &s * &a2 * &b2;
        let e0 = BigInt::from_biguint(Sign::Plus, self.d.clone()) * &b1 * &b1 * &a2 * &a2;
        // scale so that Q | E − P²
        let qa = q.abs();
        p *= &qa;
        let e = e0 * &q * &q;
        q *= &qa;
        let root = BigInt::from_biguint(Sign::Plus, isqrt(e.magnitude()));
        let mut seen: Vec<(BigInt, BigInt)> = Vec::new();
        let mut quotients: Vec<BigInt> = Vec::new();
        loop {
            if let Some(pos) = seen.iter().position(|st| st.0 == p && st.1 == q) {
                let period = quotients.split_off(pos);
                if quotients.is_empty() {
                    // a_0 itself sits in the cycle; unroll one period.
                    quotients.push(period[0].clone());
                    let mut rot: Vec<BigInt> = period[1..].to_vec();
                    rot.push(period[0].clone());
                    return ContinuedFraction::periodic(quotients, rot).expect("surd expansion");
                }
                return ContinuedFraction::periodic(quotients, period).expect("surd expansion");
            }
            seen.push((p.clone(), q.clone()));
            let a = if q.is_positive() {
                (&p + &root).div_floor(&q)
            } else {
                (-&p - &root - BigInt::one()).div_floor(&(-&q))
            };
            let np = &a * &q - &p;
            let nq = (&e - &np * &np) / &q;
            quotients.push(a);
            p = np;
            q = nq;
        }
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}·√{}", self.a, self.b, self.d)
    }
}

/// A real number described symbolically.
#[derive(Clone, Debug)]
pub enum RealSpec {
    Rational(BigRational),
    Surd(QuadraticSurd),
    Stream(ContinuedFraction),
}

impl RealSpec {
    pub fn rational(n: i64, d: i64) -> Self {
        RealSpec::Rational(super::ratio(n, d))
    }

    pub fn zero() -> Self {
        RealSpec::Rational(BigRational::zero())
    }

    /// Enclosure of width at most `width`.
    pub fn enclose(&self, width: &BigRational) -> Result<Enclosure> {
        if !width.is_positive() {
            return Err(Error::param("target width must be positive"));
        }
        match self {
            RealSpec::Rational(r) => Ok(Enclosure::point(r.clone())),
            RealSpec::Surd(s) => Ok(s.enclose(width)),
            RealSpec::Stream(cf) => cf.enclose(width),
        }
    }

    /// The exact value when it is known to be rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            RealSpec::Rational(r) => Some(r.clone()),
            RealSpec::Surd(s) if s.b.is_zero() => Some(s.a.clone()),
            RealSpec::Stream(cf) if cf.is_finite() => crate::contfrac::evaluate(cf).ok(),
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    pub fn continued_fraction(&self) -> ContinuedFraction {
        match self {
            RealSpec::Rational(r) => cf_of_rational(r),
            RealSpec::Surd(s) => s.continued_fraction(),
            RealSpec::Stream(cf) => cf.clone(),
        }
    }

    /// `x - k` for an integer `k`.
    pub fn minus_integer(&self, k: &BigInt) -> RealSpec {
        let kr = BigRational::from_integer(k.clone());
        match self {
            RealSpec::Rational(r) => RealSpec::Rational(r - kr),
            RealSpec::Surd(s) => RealSpec::Surd(QuadraticSurd {
                a: &s.a - kr,
                b: s.b.clone(),
                d: s.d.clone(),
            }),
            RealSpec::Stream(cf) => {
                let k = k.clone();
                let inner = cf.clone();
                RealSpec::Stream(shift_cf(&inner, &k))
            }
        }
    }
}

fn shift_cf(cf: &ContinuedFraction, k: &BigInt) -> ContinuedFraction {
    use crate::contfrac::QuotientSource;
    match cf.source() {
        QuotientSource::Exact(v) => {
            let mut v = v.clone();
            v[0] -= k;
            ContinuedFraction::exact(v).expect("shifted expansion")
        }
        QuotientSource::Prefix(v) => {
            let mut v = v.clone();
            v[0] -= k;
            ContinuedFraction::prefix(v).expect("shifted expansion")
        }
        QuotientSource::Periodic { prefix, period } => {
            let mut p = prefix.clone();
            p[0] -= k;
            ContinuedFraction::periodic(p, period.clone()).expect("shifted expansion")
        }
        QuotientSource::Rule { id, f } => {
            let f = f.clone();
            let k = k.clone();
            ContinuedFraction::rule(format!("{id}-{k}"), move |j| {
                let a = f(j)?;
                Some(if j == 0 { a - &k } else { a })
            })
        }
    }
}

impl From<BigRational> for RealSpec {
    fn from(r: BigRational) -> Self {
        RealSpec::Rational(r)
    }
}

impl fmt::Display for RealSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealSpec::Rational(r) => write!(f, "{r}"),
            RealSpec::Surd(s) => write!(f, "{s}"),
            RealSpec::Stream(cf) => write!(f, "{cf}"),
        }
    }
}

/// Enclosure of `x` with width at most `target_width`.
pub fn enclose(x: &RealSpec, target_width: &BigRational) -> Result<Enclosure> {
    x.enclose(target_width)
}
