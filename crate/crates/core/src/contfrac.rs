//! Continued fractions, convergents, the error terms `D_j = q_j α − p_j`,
//! and a finite-depth estimate of the diophantine exponent.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numbers::{self, floor, log, resolve, BigRational, Budget, Enclosure, RealSpec};

type RuleFn = dyn Fn(usize) -> Option<BigInt> + Send + Sync;

/// Where partial quotients come from. Index 0 is `a_0`.
#[derive(Clone)]
pub enum QuotientSource {
    /// Complete expansion of a rational.
    Exact(Vec<BigInt>),
    /// Known prefix of an expansion that continues past the end.
    Prefix(Vec<BigInt>),
    /// Eventually periodic (quadratic irrational).
    Periodic {
        prefix: Vec<BigInt>,
        period: Vec<BigInt>,
    },
    /// Pure function of the index; `None` means not available.
    Rule { id: String, f: Arc<RuleFn> },
}

/// `a_0; a_1, a_2, ...`, finite or lazily generated.
#[derive(Clone)]
pub struct ContinuedFraction {
    source: QuotientSource,
}

impl fmt::Debug for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ContinuedFraction({self})")
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[BigInt]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        match &self.source {
            QuotientSource::Exact(v) => write!(f, "[{}]", list(v)),
            QuotientSource::Prefix(v) => write!(f, "[{},...]", list(v)),
            QuotientSource::Periodic { prefix, period } => {
                write!(f, "[{};({})]", list(prefix), list(period))
            }
            QuotientSource::Rule { id, .. } => write!(f, "rule:{id}"),
        }
    }
}

fn check_partials(v: &[BigInt], from: usize) -> Result<()> {
    for (j, a) in v.iter().enumerate() {
        if j + from >= 1 && !a.is_positive() {
            return Err(Error::param(format!(
                "partial quotient a_{} = {a} must be >= 1",
                j + from
            )));
        }
    }
    Ok(())
}

impl ContinuedFraction {
    /// Complete expansion of a rational. A trailing `1` is folded into the
    /// previous quotient so the representation is canonical.
    pub fn exact(mut v: Vec<BigInt>) -> Result<Self> {
        if v.is_empty() {
            return Err(Error::param("empty continued fraction"));
        }
        check_partials(&v, 0)?;
        if v.len() >= 2 && v[v.len() - 1].is_one() {
            v.pop();
            let last = v.len() - 1;
            v[last] += 1;
        }
        Ok(ContinuedFraction {
            source: QuotientSource::Exact(v),
        })
    }

    /// A prefix of an expansion that does not stop there.
    pub fn prefix(v: Vec<BigInt>) -> Result<Self> {
        if v.is_empty() {
            return Err(Error::param("empty continued fraction"));
        }
        check_partials(&v, 0)?;
        Ok(ContinuedFraction {
            source: QuotientSource::Prefix(v),
        })
    }

    pub fn periodic(prefix: Vec<BigInt>, period: Vec<BigInt>) -> Result<Self> {
        if prefix.is_empty() || period.is_empty() {
            return Err(Error::param(
                "periodic expansion needs a_0 and a non-empty period",
            ));
        }
        check_partials(&prefix, 0)?;
        check_partials(&period, 1)?;
        Ok(ContinuedFraction {
            source: QuotientSource::Periodic { prefix, period },
        })
    }

    /// Quotients from a pure function of the index. The function must return
    /// `a_j >= 1` for `j >= 1`; this is checked when quotients are read.
    pub fn rule(
        id: impl Into<String>,
        f: impl Fn(usize) -> Option<BigInt> + Send + Sync + 'static,
    ) -> Self {
        ContinuedFraction {
            source: QuotientSource::Rule {
                id: id.into(),
                f: Arc::new(f),
            },
        }
    }

    /// Built-in expansions: `golden` = [1;1,1,...], `golden_conjugate` =
    /// [0;1,1,...], `sqrt2`, `e`, `const:k` = [0;k,k,...], and `rapid`
    /// with `a_0 = 0` and `a_j = q_{j-1}`.
    pub fn named(id: &str) -> Result<Self> {
        let one = || BigInt::one();
        match id {
            "golden" => Self::periodic(alloc::vec![one()], alloc::vec![one()]),
            "golden_conjugate" => Self::periodic(alloc::vec![BigInt::zero()], alloc::vec![one()]),
            "sqrt2" => Self::periodic(alloc::vec![one()], alloc::vec![BigInt::from(2)]),
            "e" => Ok(Self::rule("e", |j| {
                Some(BigInt::from(match j {
                    0 => 2,
                    j if j % 3 == 2 => 2 * (j + 1) / 3,
                    _ => 1,
                }))
            })),
            "rapid" => Ok(Self::rule("rapid", rapid_quotient)),
            _ => {
                if let Some(k) = id.strip_prefix("const:") {
                    let k: BigInt = k
                        .parse()
                        .map_err(|_| Error::param(format!("bad rule id {id}")))?;
                    Self::periodic(alloc::vec![BigInt::zero()], alloc::vec![k])
                } else {
                    Err(Error::param(format!(
                        "unknown continued fraction rule {id}"
                    )))
                }
            }
        }
    }

    pub fn source(&self) -> &QuotientSource {
        &self.source
    }

    /// `a_j`, or `None` past the end of a finite or prefix expansion.
    pub fn quotient(&self, j: usize) -> Option<BigInt> {
        match &self.source {
            QuotientSource::Exact(v) | QuotientSource::Prefix(v) => v.get(j).cloned(),
            QuotientSource::Periodic { prefix, period } => Some(if j < prefix.len() {
                prefix[j].clone()
            } else {
                period[(j - prefix.len()) % period.len()].clone()
            }),
            QuotientSource::Rule { f, .. } => f(j).filter(|a| j == 0 || a.is_positive()),
        }
    }

    pub fn a0(&self) -> BigInt {
        self.quotient(0).unwrap_or_default()
    }

    /// The expansion is complete and finite, i.e. the value is rational.
    pub fn is_finite(&self) -> bool {
        matches!(self.source, QuotientSource::Exact(_))
    }

    /// Index of the last quotient for `Exact`/`Prefix` sources.
    pub fn last_index(&self) -> Option<usize> {
        match &self.source {
            QuotientSource::Exact(v) | QuotientSource::Prefix(v) => Some(v.len() - 1),
            _ => None,
        }
    }

    /// `a_0..=a_j`, or a depth error.
    pub fn quotients(&self, j: usize) -> Result<Vec<BigInt>> {
        (0..=j)
            .map(|i| {
                self.quotient(i).ok_or(Error::DepthExceeded {
                    needed: j,
                    available: i.saturating_sub(1),
                })
            })
            .collect()
    }

    /// Cylinder enclosure from `a_0..=a_j`: the value lies between `p_j/q_j`
    /// and `(p_j + p_{j-1})/(q_j + q_{j-1})`. Exact when the expansion ends
    /// at `j`.
    pub fn enclosure_at(&self, j: usize) -> Result<Enclosure> {
        let t = convergents(self, j)?;
        let pj = numbers::ratio(t.p[j].clone(), t.q[j].clone());
        if self.is_finite() && self.last_index() == Some(j) {
            return Ok(Enclosure::point(pj));
        }
        let (pm, qm) = t.prev(j);
        let other = numbers::ratio(&t.p[j] + pm, &t.q[j] + qm);
        Ok(Enclosure::hull(pj, other))
    }

    /// Enclosure of width at most `width`.
    pub fn enclose(&self, width: &BigRational) -> Result<Enclosure> {
        let mut j = 0usize;
        let (mut p, mut q) = (BigInt::one(), BigInt::zero());
        let (mut pp, mut qq) = (BigInt::zero(), BigInt::one());
        let mut best: Option<Enclosure> = None;
        loop {
            let a = match self.quotient(j) {
                Some(a) => a,
                None => {
                    return Err(Error::unattainable(best.unwrap_or_else(|| {
                        Enclosure::new(numbers::int(-1_i64 << 40), numbers::int(1_i64 << 40))
                    })))
                }
            };
            let np = &a * &p + &pp;
            let nq = &a * &q + &qq;
            pp = core::mem::replace(&mut p, np);
            qq = core::mem::replace(&mut q, nq);
            if self.is_finite() && self.last_index() == Some(j) {
                return Ok(Enclosure::point(numbers::ratio(p, q)));
            }
            // width of the cylinder is 1/(q (q + q'))
            let e = Enclosure::hull(
                numbers::ratio(p.clone(), q.clone()),
                numbers::ratio(&p + &pp, &q + &qq),
            );
            if e.width() <= *width {
                return Ok(e);
            }
            best = Some(e);
            j += 1;
        }
    }
}

fn rapid_quotient(j: usize) -> Option<BigInt> {
    if j == 0 {
        return Some(BigInt::zero());
    }
    // a_j = q_{j-1}, so q_j = q_{j-1}^2 + q_{j-2}.
    let (mut q_prev, mut q) = (BigInt::zero(), BigInt::one());
    for _ in 1..j {
        let next = &q * &q + &q_prev;
        q_prev = core::mem::replace(&mut q, next);
    }
    Some(q)
}

/// Rows `j = 0..=J` of `(a_j, p_j, q_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergentTable {
    pub a: Vec<BigInt>,
    pub p: Vec<BigInt>,
    pub q: Vec<BigInt>,
}

impl ConvergentTable {
    pub fn depth(&self) -> usize {
        self.q.len() - 1
    }

    /// `(p_{j-1}, q_{j-1})` with the convention `p_{-1} = 1`, `q_{-1} = 0`.
    pub fn prev(&self, j: usize) -> (BigInt, BigInt) {
        if j == 0 {
            (BigInt::one(), BigInt::zero())
        } else {
            (self.p[j - 1].clone(), self.q[j - 1].clone())
        }
    }

    /// `q_{j}` for `j >= -1`, passed as `j + 1`.
    pub fn q_shifted(&self, j_plus_one: usize) -> BigInt {
        if j_plus_one == 0 {
            BigInt::zero()
        } else {
            self.q[j_plus_one - 1].clone()
        }
    }

    pub fn convergent(&self, j: usize) -> BigRational {
        numbers::ratio(self.p[j].clone(), self.q[j].clone())
    }
}

/// Expansion of a rational by Euclid's algorithm with floor division.
pub fn cf_of_rational(r: &BigRational) -> ContinuedFraction {
    let mut out = Vec::new();
    let (mut n, mut d) = (r.numer().clone(), r.denom().clone());
    while !d.is_zero() {
        let (a, rem) = n.div_mod_floor(&d);
        out.push(a);
        n = core::mem::replace(&mut d, rem);
    }
    ContinuedFraction {
        source: QuotientSource::Exact(out),
    }
}

/// Value of a complete finite expansion.
pub fn evaluate(cf: &ContinuedFraction) -> Result<BigRational> {
    match cf.last_index() {
        Some(j) if cf.is_finite() => Ok(convergents(cf, j)?.convergent(j)),
        _ => Err(Error::param("expansion is not finite")),
    }
}

/// Convergent table up to depth `J`.
pub fn convergents(cf: &ContinuedFraction, depth: usize) -> Result<ConvergentTable> {
    let a = cf.quotients(depth)?;
    let mut p = Vec::with_capacity(depth + 1);
    let mut q = Vec::with_capacity(depth + 1);
    let (mut pm, mut qm) = (BigInt::one(), BigInt::zero());
    let (mut pmm, mut qmm) = (BigInt::zero(), BigInt::one());
    for aj in &a {
        let np = aj * &pm + &pmm;
        let nq = aj * &qm + &qmm;
        pmm = core::mem::replace(&mut pm, np.clone());
        qmm = core::mem::replace(&mut qm, nq.clone());
        p.push(np);
        q.push(nq);
    }
    Ok(ConvergentTable { a, p, q })
}

/// Certified error term `D_j = q_j α − p_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct DValue {
    pub j: usize,
    pub value: Enclosure,
    /// `+1` or `-1`; `0` only when `D_j` is exactly zero (end of a rational).
    pub sign: i8,
    /// Enclosure of `|D_j| q_{j+1}`, certified inside `[1/2, 1]`.
    pub scaled: Enclosure,
}

/// Enclosure of `D_j` with the bound `1/2 <= |D_j| q_{j+1} <= 1` and the sign
/// `(-1)^j` certified. `alpha` must describe the same number as `cf`.
pub fn d_value(
    cf: &ContinuedFraction,
    alpha: &RealSpec,
    j: usize,
    width: &BigRational,
) -> Result<DValue> {
    d_value_with_budget(cf, alpha, j, width, &Budget::default())
}

pub fn d_value_with_budget(
    cf: &ContinuedFraction,
    alpha: &RealSpec,
    j: usize,
    width: &BigRational,
    budget: &Budget,
) -> Result<DValue> {
    if cf.is_finite() && cf.last_index() == Some(j) {
        let t = convergents(cf, j)?;
        let d = numbers::int(t.q[j].clone()) * evaluate(cf)? - numbers::int(t.p[j].clone());
        return Ok(DValue {
            j,
            value: Enclosure::point(d),
            sign: 0,
            scaled: Enclosure::zero(),
        });
    }
    let t = convergents(cf, j + 1)?;
    let qj = numbers::int(t.q[j].clone());
    let pj = numbers::int(t.p[j].clone());
    let qn = numbers::int(t.q[j + 1].clone());
    let half = numbers::ratio(1, 2);
    let one = BigRational::one();
    let expected = if j.is_multiple_of(2) { 1 } else { -1 };
    resolve::resolve(budget, |w| {
        let w = if w < width { w.clone() } else { width.clone() };
        let a = alpha.enclose(&(&w / &qj))?;
        let d = a.scale(&qj).shift(&-&pj);
        let scaled = d.abs().scale(&qn);
        let sign = match d.sign() {
            Some(core::cmp::Ordering::Greater) => 1,
            Some(core::cmp::Ordering::Less) => -1,
            _ => return Ok(None),
        };
        if *scaled.lo() >= half && *scaled.hi() <= one && d.width() <= *width {
            if sign != expected {
                return Err(Error::NotCertified(format!(
                    "sign of D_{j} is not (-1)^{j}"
                )));
            }
            Ok(Some(DValue {
                j,
                value: d,
                sign,
                scaled,
            }))
        } else if *scaled.hi() < half || *scaled.lo() > one {
            Err(Error::NotCertified(format!(
                "|D_{j}| q_{} outside [1/2, 1]",
                j + 1
            )))
        } else {
            Ok(None)
        }
    })
}

/// Lower estimate of `ω(α) = limsup log q_{k+1} / log q_k` at depth `J`:
/// the maximum of the ratio over the tail window `ceil(J/2) <= k < J`,
/// with the `max(ln x, 1)` logarithm. Early terms are dropped because
/// small `q_k` dominate the ratio without saying anything about the limsup.
pub fn omega_estimate(cf: &ContinuedFraction, depth: usize) -> Result<BigRational> {
    if depth < 2 {
        return Err(Error::param("omega_estimate needs J >= 2"));
    }
    let t = convergents(cf, depth)?;
    let start = depth.div_ceil(2);
    let mut best = 0f64;
    for k in start.max(1)..depth {
        let r = log::max_log_bigint(&t.q[k + 1]) / log::max_log_bigint(&t.q[k]);
        if r > best {
            best = r;
        }
    }
    Ok(BigRational::from_float(best).unwrap_or_default())
}

/// `floor(α)` and fractional part helpers for finite tables.
pub fn integer_part(cf: &ContinuedFraction) -> BigInt {
    cf.a0()
}

/// Fractional value `{p_j/q_j}` of a convergent.
pub fn convergent_frac(t: &ConvergentTable, j: usize) -> BigRational {
    let c = t.convergent(j);
    let f = numbers::int(floor(&c));
    c - f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::{pow10_inv, ratio, QuadraticSurd};
    use proptest::prelude::*;
    use std::vec;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn rational_expansions() {
        let cf = cf_of_rational(&ratio(355, 113));
        assert_eq!(cf.quotients(2).unwrap(), big(&[3, 7, 16]));
        assert!(cf.quotient(3).is_none());
        assert_eq!(
            cf_of_rational(&ratio(1, 2)).quotients(1).unwrap(),
            big(&[0, 2])
        );
        assert_eq!(cf_of_rational(&numbers::int(3)).last_index(), Some(0));
        assert_eq!(
            cf_of_rational(&ratio(-7, 3)).quotients(2).unwrap(),
            big(&[-3, 1, 2])
        );
    }

    #[test]
    fn exact_folds_trailing_one() {
        let cf = ContinuedFraction::exact(big(&[0, 1, 1])).unwrap();
        assert_eq!(evaluate(&cf).unwrap(), ratio(1, 2));
        assert_eq!(cf.last_index(), Some(1));
    }

    #[test]
    fn convergent_rows() {
        let t = convergents(&cf_of_rational(&ratio(355, 113)), 2).unwrap();
        assert_eq!(t.p, big(&[3, 22, 355]));
        assert_eq!(t.q, big(&[1, 7, 113]));
        let g = ContinuedFraction::named("golden_conjugate").unwrap();
        assert_eq!(convergents(&g, 6).unwrap().q, big(&[1, 1, 2, 3, 5, 8, 13]));
        let e = ContinuedFraction::named("e").unwrap();
        assert_eq!(e.quotients(8).unwrap(), big(&[2, 1, 2, 1, 1, 4, 1, 1, 6]));
    }

    #[test]
    fn depth_error_past_the_end() {
        let cf = ContinuedFraction::prefix(big(&[0, 1, 1, 1])).unwrap();
        assert!(matches!(
            convergents(&cf, 5),
            Err(Error::DepthExceeded { needed: 5, .. })
        ));
        assert!(matches!(
            cf.enclose(&pow10_inv(20)),
            Err(Error::PrecisionUnattainable { .. })
        ));
    }

    #[test]
    fn d_values_for_sqrt2() {
        let cf = ContinuedFraction::named("sqrt2").unwrap();
        let a = RealSpec::Surd(QuadraticSurd::sqrt(2).unwrap());
        let d0 = d_value(&cf, &a, 0, &pow10_inv(30)).unwrap();
        assert_eq!(d0.sign, 1);
        let d1 = d_value(&cf, &a, 1, &pow10_inv(30)).unwrap();
        assert_eq!(d1.sign, -1);
        // D_1 = 2√2 − 3
        let s = QuadraticSurd::new(numbers::int(-3), numbers::int(2), 2u32.into()).unwrap();
        let direct = RealSpec::Surd(s).enclose(&pow10_inv(40)).unwrap();
        assert!(d1.value.intersects(&direct));
    }

    #[test]
    fn d_value_on_golden() {
        let cf = ContinuedFraction::named("golden").unwrap();
        let a = RealSpec::Stream(cf.clone());
        let d = d_value(&cf, &a, 3, &pow10_inv(20)).unwrap();
        assert!(*d.scaled.lo() >= ratio(1, 2) && *d.scaled.hi() <= numbers::int(1));
    }

    #[test]
    fn omega_examples() {
        let rapid = ContinuedFraction::named("rapid").unwrap();
        let w = omega_estimate(&rapid, 5).unwrap();
        assert!(w >= numbers::int(2), "{w}");
        let s = ContinuedFraction::named("const:2").unwrap();
        assert!(omega_estimate(&s, 20).unwrap() <= ratio(6, 5));
        let g = ContinuedFraction::named("golden").unwrap();
        let w20 = omega_estimate(&g, 20).unwrap();
        let w80 = omega_estimate(&g, 80).unwrap();
        let w400 = omega_estimate(&g, 400).unwrap();
        assert!(w400 < w80 && w80 < w20 && w400 < ratio(101, 100));
    }

    fn arb_cf() -> impl Strategy<Value = ContinuedFraction> {
        (
            0i64..5,
            prop::collection::vec(1i64..=30, 1..8),
            prop::collection::vec(1i64..=30, 1..5),
        )
            .prop_map(|(a0, pre, per)| {
                let mut prefix = vec![BigInt::from(a0)];
                prefix.extend(pre.into_iter().map(BigInt::from));
                ContinuedFraction::periodic(prefix, per.into_iter().map(BigInt::from).collect())
                    .unwrap()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn recursion_and_coprimality(cf in arb_cf()) {
            let t = convergents(&cf, 25).unwrap();
            for j in 0..=25 {
                prop_assert!(t.p[j].gcd(&t.q[j]).is_one());
                if j >= 1 {
                    prop_assert!(j == 1 && t.q[1] >= t.q[0] || t.q[j] > t.q[j - 1]);
                }
                if j >= 2 {
                    prop_assert_eq!(&t.q[j], &(&t.a[j] * &t.q[j - 1] + &t.q[j - 2]));
                }
            }
        }

        #[test]
        fn d_law_holds(cf in arb_cf(), j in 0usize..25) {
            let a = RealSpec::Stream(cf.clone());
            let d = d_value(&cf, &a, j, &pow10_inv(10)).unwrap();
            prop_assert_eq!(d.sign as i32, if j % 2 == 0 { 1 } else { -1 });
        }

        #[test]
        fn rational_roundtrip(n in -10_000i64..10_000, d in 1i64..10_000) {
            let r = ratio(n, d);
            let cf = cf_of_rational(&r);
            prop_assert_eq!(evaluate(&cf).unwrap(), r);
            let last = cf.last_index().unwrap();
            if last >= 1 {
                prop_assert!(cf.quotient(last).unwrap() > BigInt::one());
            }
        }

        #[test]
        fn cylinder_lies_between_convergents(cf in arb_cf(), j in 0usize..20) {
            let t = convergents(&cf, j + 1).unwrap();
            let e = cf.enclosure_at(j).unwrap();
            let x = cf.enclose(&pow10_inv(60)).unwrap();
            prop_assert!(x.is_subset_of(&e));
            let between = Enclosure::hull(t.convergent(j), t.convergent(j + 1));
            prop_assert!(x.is_subset_of(&between));
        }
    }
}
