//! Shift-reduced fractions: `(a, n)` is `(γ, η)`-shift-reduced when
//! `gcd(q_t a + c_t, n) = 1`, where `c_t/q_t` is the convergent of `γ` with
//! the largest index such that `q_t <= n^η`.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Pow, ToPrimitive, Zero};

use crate::contfrac::{convergents, ContinuedFraction, ConvergentTable};
use crate::error::{Error, Result};
use crate::numbers::{BigRational, RealSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftAnchor {
    pub n: u64,
    pub t: usize,
    pub c_t: BigInt,
    pub q_t: BigInt,
}

/// Exponent `η = p/D` in `(0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Eta {
    pub p: u32,
    pub d: u32,
}

impl Eta {
    pub fn new(p: u32, d: u32) -> Result<Self> {
        if p == 0 || p >= d {
            return Err(Error::param(format!("eta = {p}/{d} must lie in (0, 1)")));
        }
        let g = p.gcd(&d);
        Ok(Eta { p: p / g, d: d / g })
    }

    pub fn from_rational(r: &BigRational) -> Result<Self> {
        let (Some(p), Some(d)) = (r.numer().to_u32(), r.denom().to_u32()) else {
            return Err(Error::param("eta must be a small positive rational"));
        };
        Eta::new(p, d)
    }

    /// `q <= n^η`, decided as `q^D <= n^p`.
    pub fn admits(&self, q: &BigInt, n: u64) -> bool {
        Pow::pow(q, self.d) <= Pow::pow(BigInt::from(n), self.p)
    }
}

/// Convergents of one shift `γ`, extended on demand.
#[derive(Clone, Debug)]
pub struct Anchors {
    cf: ContinuedFraction,
    table: ConvergentTable,
}

impl Anchors {
    pub fn new(gamma: &RealSpec) -> Result<Self> {
        let cf = gamma.continued_fraction();
        let table = convergents(&cf, 0)?;
        Ok(Anchors { cf, table })
    }

    fn ensure(&mut self, depth: usize) -> Result<bool> {
        if self.table.depth() >= depth {
            return Ok(true);
        }
        if let Some(last) = self.cf.last_index() {
            if depth > last {
                if self.table.depth() < last {
                    self.table = convergents(&self.cf, last)?;
                }
                return Ok(false);
            }
        }
        let mut want = depth.max(2 * self.table.depth());
        if let Some(last) = self.cf.last_index() {
            want = want.min(last);
        }
        self.table = convergents(&self.cf, want)?;
        Ok(true)
    }

    pub fn anchor(&mut self, eta: Eta, n: u64) -> Result<ShiftAnchor> {
        if n == 0 {
            return Err(Error::param("n must be >= 1"));
        }
        let mut t = 0;
        loop {
            if !self.ensure(t + 1)? {
                // finite expansion: the last convergent is γ itself
                let last = self.table.depth();
                while t < last && eta.admits(&self.table.q[t + 1], n) {
                    t += 1;
                }
                break;
            }
            if !eta.admits(&self.table.q[t + 1], n) {
                break;
            }
            t += 1;
        }
        Ok(ShiftAnchor {
            n,
            t,
            c_t: self.table.p[t].clone(),
            q_t: self.table.q[t].clone(),
        })
    }
}

pub fn anchor_convergent(gamma: &RealSpec, eta: Eta, n: u64) -> Result<ShiftAnchor> {
    Anchors::new(gamma)?.anchor(eta, n)
}

impl ShiftAnchor {
    /// `(q_t mod n, c_t mod n)`.
    fn residues(&self) -> (u64, u64) {
        let n = BigInt::from(self.n);
        let r = |x: &BigInt| x.mod_floor(&n).to_u64().expect("residue below n");
        (r(&self.q_t), r(&self.c_t))
    }

    pub fn is_reduced(&self, a: i64) -> bool {
        let (q, c) = self.residues();
        let n = self.n as u128;
        let a = (a as i128).rem_euclid(n as i128) as u128;
        ((q as u128 * a + c as u128) % n).gcd(&n) == 1
    }

    /// `#{1 <= a <= n : gcd(q_t a + c_t, n) = 1}` by enumeration.
    pub fn count(&self) -> u64 {
        let (q, c) = self.residues();
        let n = self.n;
        let mut r = (q + c) % n.max(1);
        let mut count = 0;
        for _ in 0..n {
            if r.gcd(&n) == 1 {
                count += 1;
            }
            r += q;
            if r >= n {
                r -= n;
            }
        }
        count
    }

    /// `n Π_{p | n, p ∤ q_t} (1 − 1/p)`.
    pub fn closed_form(&self) -> u64 {
        let q = self
            .q_t
            .mod_floor(&BigInt::from(self.n))
            .to_u64()
            .unwrap_or(0);
        let mut out = self.n;
        for p in prime_factors(self.n) {
            // p | q_t  ⇔  p | (q_t mod n), since p | n
            if q % p != 0 {
                out = out / p * (p - 1);
            }
        }
        out
    }
}

pub fn is_shift_reduced(a: i64, n: u64, gamma: &RealSpec, eta: Eta) -> Result<bool> {
    Ok(anchor_convergent(gamma, eta, n)?.is_reduced(a))
}

pub fn phi_shift(n: u64, gamma: &RealSpec, eta: Eta) -> Result<u64> {
    Ok(anchor_convergent(gamma, eta, n)?.count())
}

/// Largest argument accepted by [`totient`].
pub const TOTIENT_BUDGET: u64 = 1_000_000_000_000;

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn totient(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::param("totient needs n >= 1"));
    }
    if n > TOTIENT_BUDGET {
        return Err(Error::budget(format!(
            "n = {n} exceeds the factorisation budget"
        )));
    }
    Ok(prime_factors(n).iter().fold(n, |acc, &p| acc / p * (p - 1)))
}

/// `Σ_{n <= n_max} ψ(n) φ(n) / n`.
pub fn ds_series_partial(psi: &dyn Fn(u64) -> BigRational, n_max: u64) -> Result<BigRational> {
    let mut s = BigRational::zero();
    for n in 1..=n_max {
        let v = psi(n);
        if !v.is_zero() {
            s += v * BigRational::new(BigInt::from(totient(n)?), BigInt::from(n));
        }
    }
    Ok(s)
}

/// Verifies the closed form for one anchor by counting residues of
/// `q_t a + c_t` modulo each prime power of `n` separately.
pub fn closed_form_by_residues(anchor: &ShiftAnchor) -> u64 {
    let n = anchor.n;
    let (q, c) = anchor.residues();
    let mut total = 1u64;
    let mut m = n;
    for p in prime_factors(n) {
        let mut pk = 1;
        while m.is_multiple_of(p) {
            m /= p;
            pk *= p;
        }
        // a mod p^k runs over all residues; count those with p ∤ q a + c
        let good = (0..pk)
            .filter(|&a| ((q % pk) * a + c % pk) % p != 0)
            .count() as u64;
        total *= good;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::{ratio, QuadraticSurd};
    use num_traits::One;
    use proptest::prelude::*;

    fn half() -> Eta {
        Eta::new(1, 2).unwrap()
    }

    #[test]
    fn anchors() {
        let g = RealSpec::rational(22, 7);
        let a = anchor_convergent(&g, half(), 100).unwrap();
        assert_eq!(
            (a.c_t.clone(), a.q_t.clone()),
            (BigInt::from(22), BigInt::from(7))
        );
        let a = anchor_convergent(&g, half(), 36).unwrap();
        assert_eq!((a.c_t, a.q_t), (BigInt::from(3), BigInt::from(1)));
        for n in [1, 7, 1000] {
            let a = anchor_convergent(&RealSpec::zero(), Eta::new(3, 10).unwrap(), n).unwrap();
            assert_eq!((a.c_t, a.q_t), (BigInt::zero(), BigInt::one()));
        }
        // 49^(1/2) = 7 exactly
        assert_eq!(
            anchor_convergent(&g, half(), 49).unwrap().q_t,
            BigInt::from(7)
        );
        assert_eq!(
            anchor_convergent(&g, half(), 48).unwrap().q_t,
            BigInt::from(1)
        );
    }

    #[test]
    fn shift_reduced_examples() {
        let g = RealSpec::rational(22, 7);
        assert!(!is_shift_reduced(4, 100, &g, half()).unwrap());
        assert!(is_shift_reduced(5, 1, &g, half()).unwrap());
        assert_eq!(phi_shift(12, &RealSpec::zero(), half()).unwrap(), 4);
        assert_eq!(phi_shift(1, &g, half()).unwrap(), 1);
    }

    #[test]
    fn zero_shift_is_coprimality() {
        let z = RealSpec::zero();
        for n in 1..=300u64 {
            let a = anchor_convergent(&z, half(), n).unwrap();
            for x in 1..=n {
                assert_eq!(a.is_reduced(x as i64), x.gcd(&n) == 1);
            }
        }
    }

    #[test]
    fn totients() {
        assert_eq!(totient(1).unwrap(), 1);
        assert_eq!(totient(12).unwrap(), 4);
        assert_eq!(totient(97).unwrap(), 96);
        assert!(totient(TOTIENT_BUDGET + 1).is_err());
    }

    #[test]
    fn ds_partial_sums() {
        assert_eq!(
            ds_series_partial(&|_| BigRational::zero(), 50).unwrap(),
            BigRational::zero()
        );
        assert_eq!(
            ds_series_partial(&|n| ratio(1, n as i64), 3).unwrap(),
            ratio(53, 36)
        );
        assert_eq!(ds_series_partial(&|_| ratio(1, 1), 2).unwrap(), ratio(3, 2));
    }

    #[test]
    fn sqrt2_closed_form() {
        let g = RealSpec::Surd(QuadraticSurd::sqrt(2).unwrap());
        let mut an = Anchors::new(&g).unwrap();
        for n in 1..=600u64 {
            let a = an.anchor(half(), n).unwrap();
            let c = a.count();
            assert_eq!(c, a.closed_form());
            assert_eq!(c, closed_form_by_residues(&a));
            assert!(c >= totient(n).unwrap());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn monotone_anchor(num in -500i64..500, den in 1i64..300, p in 1u32..9, n in 1u64..3000, step in 1u64..3000) {
            let eta = Eta::new(p, 10).unwrap();
            let mut an = Anchors::new(&RealSpec::rational(num, den)).unwrap();
            let a = an.anchor(eta, n).unwrap();
            let b = an.anchor(eta, n + step).unwrap();
            prop_assert!(a.q_t <= b.q_t);
            prop_assert!(eta.admits(&a.q_t, n));
        }

        #[test]
        fn closed_form_matches_count(num in -50i64..50, den in 1i64..60, p in 1u32..9, n in 1u64..800) {
            let a = anchor_convergent(&RealSpec::rational(num, den), Eta::new(p, 10).unwrap(), n).unwrap();
            prop_assert_eq!(a.count(), a.closed_form());
            prop_assert!(a.count() >= totient(n).unwrap());
        }
    }
}
