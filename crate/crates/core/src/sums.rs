//! Approximation functions, the log-averaged sums
//! `S(N) = Σ_{n<=N} 1/(n ‖nα_1 − γ_1‖ ⋯ ‖nα_m − γ_m‖)`, solution counts for
//! `Π ‖nα_i − γ_i‖ < ψ(n)` and the dyadic truncation ratio.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numbers::{
    self, log, resolve, BigRational, Budget, DistanceBound, Enclosure, OrbitDistance, RealSpec,
};

pub use crate::numbers::log::max_log_f64 as max_log;

/// The slowly growing factor `ξ` in `ψ_ξ(n) = 1/(n (log n)² ξ(n))`.
#[derive(Clone, Debug, PartialEq)]
pub enum XiRule {
    One,
    /// `ξ(n) = log log n` (`max(ln x, 1)`, so at least 1).
    LogLog,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ApproxFunction {
    Constant(BigRational),
    /// `c / n`.
    Reciprocal(BigRational),
    /// `c / n²`.
    ReciprocalSquare(BigRational),
    /// `c / (n (log n)² ξ(n))`.
    ReciprocalLogSquare {
        c: BigRational,
        xi: XiRule,
    },
    /// `ψ(n) = table[n − 1]`, zero beyond the table.
    Table(Vec<BigRational>),
}

impl ApproxFunction {
    /// Exact value when `ψ(n)` is rational.
    pub fn exact(&self, n: u64) -> Option<BigRational> {
        let nb = numbers::int(n);
        match self {
            ApproxFunction::Constant(c) => Some(c.clone()),
            ApproxFunction::Reciprocal(c) => Some(c / nb),
            ApproxFunction::ReciprocalSquare(c) => Some(c / (&nb * &nb)),
            ApproxFunction::Table(t) => Some(
                t.get((n as usize).wrapping_sub(1))
                    .cloned()
                    .unwrap_or_else(BigRational::zero),
            ),
            // log 1 = log 2 = 1, and then log log = 1 as well
            ApproxFunction::ReciprocalLogSquare { c, .. } => (n <= 2).then(|| c / nb),
        }
    }

    pub fn eval(&self, n: u64) -> Result<Enclosure> {
        if n == 0 {
            return Err(Error::param("psi is defined for n >= 1"));
        }
        if let Some(v) = self.exact(n) {
            return Ok(Enclosure::point(v));
        }
        let ApproxFunction::ReciprocalLogSquare { c, xi } = self else {
            unreachable!("all other rules are exact")
        };
        let l = log::max_log_enclosure(&numbers::int(n))?;
        let mut den = (&l * &l).scale(&numbers::int(n));
        if *xi == XiRule::LogLog {
            let ll = max_log_enclosure_of(&l)?;
            den = &den * &ll;
        }
        Ok(den.recip().expect("positive").scale(c))
    }

    /// `ψ(n)` as a small fraction `p/q`, when exact and representable.
    pub fn small(&self, n: u64) -> Option<(i128, i128)> {
        let v = self.exact(n)?;
        Some((v.numer().to_i128()?, v.denom().to_i128()?))
    }

    /// Checks `ψ(n+1) <= ψ(n)` on `1..=n_max`, by enclosures.
    pub fn check_non_increasing(&self, n_max: u64) -> Result<()> {
        let mut prev = self.eval(1)?;
        for n in 2..=n_max {
            let cur = self.eval(n)?;
            if cur.lo() > prev.hi() {
                return Err(Error::param(format!("psi increases at n = {n}")));
            }
            prev = cur;
        }
        Ok(())
    }
}

/// `max(ln x, 1)` for `x` given by an enclosure with positive lower end.
fn max_log_enclosure_of(x: &Enclosure) -> Result<Enclosure> {
    let lo = log::max_log_enclosure(x.lo())?;
    let hi = log::max_log_enclosure(x.hi())?;
    Ok(Enclosure::new(lo.lo().clone(), hi.hi().clone()))
}

/// `Φ(n) = ψ(n) / Π ‖nα_i − γ_i‖`.
#[derive(Clone, Debug, PartialEq)]
pub enum PhiValue {
    Finite(Enclosure),
    /// Some factor is exactly zero.
    Infinite,
}

fn distances(alphas: &[RealSpec], gammas: &[RealSpec]) -> Result<Vec<OrbitDistance>> {
    if alphas.len() != gammas.len() {
        return Err(Error::param("alphas and gammas must have equal lengths"));
    }
    alphas
        .iter()
        .zip(gammas)
        .map(|(a, g)| OrbitDistance::new(a.clone(), g.clone()))
        .collect()
}

/// Enclosure of `‖nα − γ‖` that excludes zero, or `None` if it is zero.
fn nonzero_factor(d: &OrbitDistance, n: u64, budget: &Budget) -> Result<Option<Enclosure>> {
    let ni = i64::try_from(n).map_err(|_| Error::param("n too large"))?;
    if d.is_zero(ni) {
        return Ok(None);
    }
    if let Some(b) = d.fast(ni).filter(|b| b.lo > 0) {
        return Ok(Some(b.to_enclosure()));
    }
    let nb = BigInt::from(n);
    resolve::resolve(budget, |w| {
        let e = d.enclose(&nb, w)?;
        Ok((!e.contains_zero()).then_some(e))
    })
    .map(Some)
}

pub fn phi_big(
    n: u64,
    alphas: &[RealSpec],
    gammas: &[RealSpec],
    psi: &ApproxFunction,
) -> Result<PhiValue> {
    let budget = Budget::default();
    let mut prod = Enclosure::point(BigRational::one());
    for d in distances(alphas, gammas)? {
        match nonzero_factor(&d, n, &budget)? {
            Some(f) => prod = &prod * &f,
            None => return Ok(PhiValue::Infinite),
        }
    }
    let r = prod
        .recip()
        .ok_or_else(|| Error::undecidable("product of distances"))?;
    Ok(PhiValue::Finite(&psi.eval(n)? * &r))
}

/// A float sum with a bound on its distance from the true value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FloatSum {
    pub value: f64,
    pub err: f64,
    /// Some term was `1/0`.
    pub infinite: bool,
}

impl FloatSum {
    pub fn zero() -> Self {
        FloatSum {
            value: 0.0,
            err: 0.0,
            infinite: false,
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.infinite || (x - self.value).abs() <= self.err
    }

    /// Adds `t ± e`, charging half an ulp of the new partial sum.
    pub fn add(&mut self, t: f64, e: f64) {
        self.value += t;
        self.err += e + half_ulp(self.value);
    }

    pub fn lo(&self) -> f64 {
        self.value - self.err
    }

    pub fn hi(&self) -> f64 {
        self.value + self.err
    }
}

fn half_ulp(x: f64) -> f64 {
    let a = x.abs();
    (numbers::next_up(a) - a) / 2.0
}

const UNIT: f64 = f64::EPSILON / 2.0;

/// Streaming evaluator of the terms `1/(n Π ‖nα_i − γ_i‖)`.
pub struct LogAvgTerms {
    dist: Vec<OrbitDistance>,
    budget: Budget,
}

impl LogAvgTerms {
    pub fn new(alphas: &[RealSpec], gammas: &[RealSpec]) -> Result<Self> {
        Ok(LogAvgTerms {
            dist: distances(alphas, gammas)?,
            budget: Budget::default(),
        })
    }

    fn bounds(&self, n: u64) -> Result<Option<Vec<DistanceBound>>> {
        let mut out = Vec::with_capacity(self.dist.len());
        for d in &self.dist {
            let ni = n as i64;
            match d.fast(ni) {
                Some(b) if b.is_exact() && b.lo == 0 => return Ok(None),
                Some(b) if b.lo > 0 => out.push(b),
                _ => {
                    let Some(e) = nonzero_factor(d, n, &self.budget)? else {
                        return Ok(None);
                    };
                    // 2^-120 is far below f64 resolution
                    let s = |x: &BigRational, up| {
                        numbers::scaled(x, 120, up).to_i128().unwrap_or(i128::MAX)
                    };
                    out.push(DistanceBound {
                        lo: s(e.lo(), false).max(1),
                        hi: s(e.hi(), true),
                        den: 1 << 120,
                    });
                }
            }
        }
        Ok(Some(out))
    }

    /// Term value and error bound; `None` for `1/0`.
    pub fn float_term(&self, n: u64) -> Result<Option<(f64, f64)>> {
        let Some(b) = self.bounds(n)? else {
            return Ok(None);
        };
        let m = b.len() as f64;
        let prod = |f: &dyn Fn(&DistanceBound) -> f64| b.iter().fold(n as f64, |acc, x| acc * f(x));
        let big = 1.0 / prod(&|x| x.lo_f64());
        let small = 1.0 / prod(&|x| x.hi_f64());
        let t = if big == small {
            big
        } else {
            (big + small) / 2.0
        };
        // three roundings per factor, one per product step, one reciprocal,
        // one for n as f64
        let rounding = (3.0 * m + m + 2.0) * UNIT * 1.01 * big;
        Ok(Some((t, (big - small) / 2.0 + rounding)))
    }

    /// Term as an enclosure whose ends lie on the `2^-bits` grid.
    pub fn grid_term(&self, n: u64, bits: u32) -> Result<Option<(BigInt, BigInt)>> {
        let Some(b) = self.bounds(n)? else {
            return Ok(None);
        };
        let (mut num_lo, mut num_hi) = (
            BigInt::one() << bits as usize,
            BigInt::one() << bits as usize,
        );
        let (mut den_lo, mut den_hi) = (BigInt::from(n), BigInt::from(n));
        for x in &b {
            num_lo *= x.den;
            num_hi *= x.den;
            den_lo *= x.hi;
            den_hi *= x.lo;
        }
        let lo = num_lo.div_floor(&den_lo);
        let hi = -((-num_hi).div_floor(&den_hi));
        Ok(Some((lo, hi)))
    }
}

/// `S(N)` in 64-bit floats, summed in increasing `n`.
pub fn log_avg_sum_float(n_max: u64, alphas: &[RealSpec], gammas: &[RealSpec]) -> Result<FloatSum> {
    let terms = LogAvgTerms::new(alphas, gammas)?;
    let mut s = FloatSum::zero();
    for n in 1..=n_max {
        match terms.float_term(n)? {
            Some((t, e)) => s.add(t, e),
            None => {
                s.infinite = true;
                s.value = f64::INFINITY;
                return Ok(s);
            }
        }
    }
    Ok(s)
}

/// Fixed point resolution of the exact spot check.
pub const SPOTCHECK_BITS: u32 = 256;

/// Rigorous enclosure of `Σ_{n in range} 1/(n Π‖nα_i − γ_i‖)`: each term is
/// rounded outward to the `2^-256` grid, so partial sums over disjoint
/// ranges add exactly. `None` if some term is `1/0`.
pub fn log_avg_sum_exact(
    range: core::ops::RangeInclusive<u64>,
    alphas: &[RealSpec],
    gammas: &[RealSpec],
) -> Result<Option<Enclosure>> {
    let terms = LogAvgTerms::new(alphas, gammas)?;
    let (mut lo, mut hi) = (BigInt::zero(), BigInt::zero());
    for n in range {
        let Some((a, b)) = terms.grid_term(n, SPOTCHECK_BITS)? else {
            return Ok(None);
        };
        lo += a;
        hi += b;
    }
    let d = BigInt::one() << SPOTCHECK_BITS as usize;
    Ok(Some(Enclosure::new(
        BigRational::new(lo, d.clone()),
        BigRational::new(hi, d),
    )))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumMode {
    Float,
    ExactSpotcheck,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LogAvgSum {
    Float(FloatSum),
    Exact(Option<Enclosure>),
}

pub fn log_avg_sum(
    n_max: u64,
    alphas: &[RealSpec],
    gammas: &[RealSpec],
    mode: SumMode,
) -> Result<LogAvgSum> {
    match mode {
        SumMode::Float => log_avg_sum_float(n_max, alphas, gammas).map(LogAvgSum::Float),
        SumMode::ExactSpotcheck => {
            if alphas.iter().chain(gammas).any(|x| !x.is_rational()) {
                return Err(Error::param("the exact spot check needs rational inputs"));
            }
            log_avg_sum_exact(1..=n_max, alphas, gammas).map(LogAvgSum::Exact)
        }
    }
}

/// The two shifts used for the published experiment.
pub fn figure1_alphas() -> Vec<RealSpec> {
    let a1 = BigRational::new(
        BigInt::from(957_363_115_715_396u64),
        BigInt::from(10u64.pow(15)),
    );
    let a2 = BigRational::new(
        BigInt::from(3_049_448_415_027_476u64),
        BigInt::from(10u64.pow(16)),
    );
    alloc::vec![RealSpec::Rational(a1), RealSpec::Rational(a2)]
}

/// One sampled point of the running sum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Figure1Row {
    pub n: u64,
    pub s: f64,
    pub fit: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Figure1 {
    pub h: u64,
    /// `c = S(H)/(log H)^k`, `k` one more than the number of factors.
    pub c: f64,
    pub s: FloatSum,
    pub rows: Vec<Figure1Row>,
}

/// Largest `H` accepted by [`figure1`].
pub const FIGURE1_BUDGET: u64 = 10_000_000;

/// Streams `S(N)` for `N <= H`, keeping every `stride`-th row and the last,
/// then fits `c (log N)^k` with `k` the number of factors plus one.
pub fn figure1(h: u64, alphas: &[RealSpec], gammas: &[RealSpec], stride: u64) -> Result<Figure1> {
    if h == 0 || h > FIGURE1_BUDGET {
        return Err(Error::param(format!("H must lie in [1, {FIGURE1_BUDGET}]")));
    }
    let stride = stride.max(1);
    let terms = LogAvgTerms::new(alphas, gammas)?;
    let k = alphas.len() as i32 + 1;
    let mut s = FloatSum::zero();
    let mut partial = Vec::new();
    for n in 1..=h {
        match terms.float_term(n)? {
            Some((t, e)) => s.add(t, e),
            None => return Err(Error::param(format!("term n = {n} is infinite"))),
        }
        if n % stride == 0 || n == h {
            partial.push((n, s.value));
        }
    }
    let c = s.value / libm::pow(log::max_log_u64(h), k as f64);
    let rows = partial
        .into_iter()
        .map(|(n, v)| Figure1Row {
            n,
            s: v,
            fit: c * libm::pow(log::max_log_u64(n), k as f64),
        })
        .collect();
    Ok(Figure1 { h, c, s, rows })
}

#[derive(Clone, Debug, PartialEq)]
pub struct GallagherReport {
    pub n_max: u64,
    /// One count per grid point.
    pub counts: Vec<u64>,
    /// `(n, grid index)` pairs whose comparison stayed open.
    pub undecided: Vec<(u64, usize)>,
    /// Fraction of grid points with count at least 1, 5, 25.
    pub summary: [f64; 3],
}

/// Counts `n <= N` with `Π_{i<=k} ‖nα_i − γ_i‖ < ψ(n)`, where `α_1..α_{k-1}`
/// are fixed and `α_k` runs over `grid`. `gammas` has `k` entries.
pub fn gallagher_counter(
    alphas: &[RealSpec],
    gammas: &[RealSpec],
    psi: &ApproxFunction,
    grid: &[BigRational],
    n_max: u64,
) -> Result<GallagherReport> {
    if gammas.len() != alphas.len() + 1 {
        return Err(Error::param("need one more gamma than fixed alphas"));
    }
    let fixed = distances(alphas, &gammas[..alphas.len()])?;
    let gk = gammas[alphas.len()].clone();
    let budget = Budget::default();
    let psi_small: Vec<Option<(i128, i128)>> = (1..=n_max).map(|n| psi.small(n)).collect();
    let mut counts = alloc::vec![0u64; grid.len()];
    let mut undecided = Vec::new();
    // fixed factors once per n
    let mut fixed_bounds: Vec<Option<Enclosure>> = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let mut prod = Enclosure::point(BigRational::one());
        for d in &fixed {
            prod = &prod * &d.bound(n as i64)?;
        }
        fixed_bounds.push((!fixed.is_empty()).then_some(prod));
    }
    for (gi, a) in grid.iter().enumerate() {
        let od = OrbitDistance::new(RealSpec::Rational(a.clone()), gk.clone())?;
        for n in 1..=n_max {
            let idx = (n - 1) as usize;
            let fast = match (&fixed_bounds[idx], psi_small[idx], od.fast(n as i64)) {
                (None, Some((p, q)), Some(b)) if b.is_exact() => {
                    // b.lo / b.den < p / q
                    match (b.lo.checked_mul(q), p.checked_mul(b.den)) {
                        (Some(l), Some(r)) => Some(l < r),
                        _ => None,
                    }
                }
                _ => None,
            };
            let hit = match fast {
                Some(h) => h,
                None => {
                    let psi_n = psi.eval(n)?;
                    let fixed = fixed_bounds[idx].clone();
                    let nb = BigInt::from(n);
                    let r = resolve::resolve(&budget, |w| {
                        let mut p = od.enclose(&nb, w)?;
                        if let Some(f) = &fixed {
                            p = &p * f;
                        }
                        Ok(match p.cmp_enclosure(&psi_n) {
                            Some(core::cmp::Ordering::Less) => Some(true),
                            Some(_) => Some(false),
                            None => None,
                        })
                    });
                    match r {
                        Ok(h) => h,
                        Err(Error::Undecidable { .. }) => {
                            undecided.push((n, gi));
                            false
                        }
                        Err(e) => return Err(e),
                    }
                }
            };
            if hit {
                counts[gi] += 1;
            }
        }
    }
    let frac =
        |t: u64| counts.iter().filter(|&&c| c >= t).count() as f64 / counts.len().max(1) as f64;
    let summary = [frac(1), frac(5), frac(25)];
    Ok(GallagherReport {
        n_max,
        counts,
        undecided,
        summary,
    })
}

/// Cell centres `α_j = (128 j + 64 + 1)/2^16`, `0 <= j < 512`, nudged to an
/// odd numerator so each has denominator exactly `2^16`.
pub fn dyadic_grid() -> Vec<BigRational> {
    (0..512)
        .map(|j| numbers::ratio(128 * j + 65, 1 << 16))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct DyadicRatio {
    /// `Σ_{C^{J0} <= n <= N} h(n) (log n)^κ`.
    pub lhs: f64,
    /// `Σ_{j=J0}^{J} j^κ C^j h(C^j)`.
    pub rhs: f64,
    pub ratio: f64,
    pub j: u32,
    /// `[1/B_lo, B_hi]` from the constants of the proof.
    pub band: (f64, f64),
}

impl DyadicRatio {
    pub fn in_band(&self) -> bool {
        self.band.0 <= self.ratio && self.ratio <= self.band.1
    }
}

/// Compares a sum over `n` with its sampled dyadic version. `h` is given as
/// a table `h[n-1]`, `n <= N`, and must be positive and non-increasing.
///
/// The band: with `λ = max(ln C, 1)` and `μ = min(ln C, 1)`, each block
/// `[C^j, C^{j+1}]` is at most `C (2λ)^κ C^j h(C^j) j^κ`, and at least
/// `(1/2)(μ/2)^κ C^{j+1} h(C^{j+1}) (j+1)^κ`; the first sample is
/// covered by the single term at `n = C^{J0}` up to `C^{J0} μ^{-κ}`.
pub fn dyadic_ratio_check(h: &[f64], c: u64, kappa: f64, j0: u32, n: u64) -> Result<DyadicRatio> {
    if c < 2 || j0 == 0 || kappa.is_nan() || kappa < 0.0 {
        return Err(Error::param("need C >= 2, J0 >= 1, kappa >= 0"));
    }
    if (h.len() as u64) < n {
        return Err(Error::param("h table shorter than N"));
    }
    if h.iter().take(n as usize).any(|&x| x.is_nan() || x <= 0.0) {
        return Err(Error::param("h must be positive"));
    }
    if let Some(i) = h.windows(2).take(n as usize - 1).position(|w| w[1] > w[0]) {
        return Err(Error::param(format!("h increases at n = {}", i + 2)));
    }
    // J = floor(log N / log C), computed with integers
    let mut j = 0u32;
    let mut p = 1u64;
    while let Some(next) = p.checked_mul(c) {
        if next > n {
            break;
        }
        p = next;
        j += 1;
    }
    if j < j0 {
        return Err(Error::param("N below C^J0"));
    }
    let start = c.pow(j0);
    let mut lhs = 0.0;
    for m in start..=n {
        lhs += h[(m - 1) as usize] * libm::pow(log::max_log_u64(m), kappa);
    }
    let mut rhs = 0.0;
    for i in j0..=j {
        let ci = c.pow(i);
        rhs += libm::pow(i as f64, kappa) * ci as f64 * h[(ci - 1) as usize];
    }
    let ln_c = libm::log(c as f64);
    let (lam, mu) = (ln_c.max(1.0), ln_c.min(1.0));
    let hi = c as f64 * libm::pow(2.0 * lam, kappa);
    let lo = (0.5 * libm::pow(mu / 2.0, kappa)).min(libm::pow(mu, kappa) / start as f64);
    Ok(DyadicRatio {
        lhs,
        rhs,
        ratio: lhs / rhs,
        j,
        band: (lo * 0.999, hi * 1.001),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::{ratio, QuadraticSurd};
    use proptest::prelude::*;

    #[test]
    fn max_log_values() {
        assert_eq!(max_log(1.0).unwrap(), 1.0);
        assert_eq!(max_log(core::f64::consts::E).unwrap(), 1.0);
        assert!(
            (max_log(core::f64::consts::E * core::f64::consts::E).unwrap() - 2.0).abs() < 1e-15
        );
        assert!(max_log(0.0).is_err());
    }

    #[test]
    fn phi_examples() {
        let psi = ApproxFunction::Reciprocal(ratio(1, 1));
        assert_eq!(
            phi_big(3, &[RealSpec::rational(1, 3)], &[RealSpec::zero()], &psi).unwrap(),
            PhiValue::Infinite
        );
        // ‖n/2‖ = 1/2 for odd n
        let PhiValue::Finite(e) =
            phi_big(5, &[RealSpec::rational(1, 2)], &[RealSpec::zero()], &psi).unwrap()
        else {
            panic!()
        };
        assert_eq!(e, Enclosure::point(ratio(2, 5)));
        let s2 = RealSpec::Surd(QuadraticSurd::sqrt(2).unwrap());
        let PhiValue::Finite(e) = phi_big(10, &[s2], &[RealSpec::zero()], &psi).unwrap() else {
            panic!()
        };
        let x = 10.0 * core::f64::consts::SQRT_2;
        let want = 0.1 / (x - libm::round(x)).abs();
        assert!((numbers::to_f64(&e.midpoint()) - want).abs() < 1e-12);
    }

    #[test]
    fn first_term_of_figure1() {
        let a = figure1_alphas();
        let z = [RealSpec::zero(), RealSpec::zero()];
        let LogAvgSum::Exact(Some(e)) = log_avg_sum(1, &a, &z, SumMode::ExactSpotcheck).unwrap()
        else {
            panic!()
        };
        // ‖α_1‖ = 1 − 0.957363115715396, ‖α_2‖ = 0.3049448415027476
        let d1 = 1.0 - 0.957363115715396;
        let d2 = 0.3049448415027476;
        let want = 1.0 / (d1 * d2);
        assert!((numbers::to_f64(&e.midpoint()) / want - 1.0).abs() < 1e-12);
        let f = log_avg_sum_float(1, &a, &z).unwrap();
        assert!(f.contains(want));
        let one = figure1(1, &a, &z, 1).unwrap();
        assert_eq!(one.c, one.s.value);
    }

    #[test]
    fn float_and_exact_agree() {
        let a = figure1_alphas();
        let z = [RealSpec::zero(), RealSpec::zero()];
        let f = log_avg_sum_float(2000, &a, &z).unwrap();
        let e = log_avg_sum_exact(1..=2000, &a, &z).unwrap().unwrap();
        let (lo, hi) = (
            numbers::to_f64_directed(e.lo(), false),
            numbers::to_f64_directed(e.hi(), true),
        );
        assert!(f.lo() <= hi && lo <= f.hi());
        // chunked exact sums add up exactly
        let p1 = log_avg_sum_exact(1..=700, &a, &z).unwrap().unwrap();
        let p2 = log_avg_sum_exact(701..=2000, &a, &z).unwrap().unwrap();
        assert_eq!(&p1 + &p2, e);
    }

    #[test]
    fn infinite_sentinel() {
        let s = log_avg_sum_float(10, &[RealSpec::rational(1, 3)], &[RealSpec::zero()]).unwrap();
        assert!(s.infinite);
        assert_eq!(
            log_avg_sum_exact(1..=10, &[RealSpec::rational(1, 3)], &[RealSpec::zero()]).unwrap(),
            None
        );
    }

    #[test]
    fn running_sum_is_monotone() {
        let f = figure1(
            500,
            &figure1_alphas(),
            &[RealSpec::zero(), RealSpec::zero()],
            1,
        )
        .unwrap();
        assert!(f.rows.windows(2).all(|w| w[0].s <= w[1].s));
        assert_eq!(f.rows.len(), 500);
    }

    #[test]
    fn gallagher_trivial_rules() {
        let grid: Vec<BigRational> = (1..9).map(|j| ratio(j, 17)).collect();
        let z = [RealSpec::zero()];
        let all =
            gallagher_counter(&[], &z, &ApproxFunction::Constant(ratio(1, 1)), &grid, 200).unwrap();
        assert!(all.counts.iter().all(|&c| c == 200));
        let none =
            gallagher_counter(&[], &z, &ApproxFunction::Constant(ratio(0, 1)), &grid, 200).unwrap();
        assert!(none.counts.iter().all(|&c| c == 0));
        let s2 = RealSpec::Surd(QuadraticSurd::sqrt(2).unwrap());
        let two = gallagher_counter(
            &[s2],
            &[RealSpec::zero(), RealSpec::zero()],
            &ApproxFunction::Constant(ratio(1, 4)),
            &grid,
            50,
        )
        .unwrap();
        assert!(two.counts.iter().all(|&c| c == 50));
    }

    #[test]
    fn log_square_rule() {
        let f = ApproxFunction::ReciprocalLogSquare {
            c: ratio(1, 4),
            xi: XiRule::One,
        };
        assert_eq!(f.eval(2).unwrap(), Enclosure::point(ratio(1, 8)));
        let v = numbers::to_f64(&f.eval(1000).unwrap().midpoint());
        let want = 0.25 / (1000.0 * libm::log(1000.0) * libm::log(1000.0));
        assert!((v / want - 1.0).abs() < 1e-12);
        f.check_non_increasing(3000).unwrap();
        ApproxFunction::ReciprocalLogSquare {
            c: ratio(1, 1),
            xi: XiRule::LogLog,
        }
        .check_non_increasing(3000)
        .unwrap();
        assert!(ApproxFunction::Table(alloc::vec![ratio(1, 2), ratio(1, 1)])
            .check_non_increasing(2)
            .is_err());
    }

    #[test]
    fn dyadic_examples() {
        let ones = alloc::vec![1.0; 5000];
        let r = dyadic_ratio_check(&ones, 2, 0.0, 1, 5000).unwrap();
        assert!(r.in_band(), "{r:?}");
        let recip: Vec<f64> = (1..=100_000).map(|n| 1.0 / n as f64).collect();
        let r = dyadic_ratio_check(&recip, 3, 1.0, 2, 100_000).unwrap();
        assert!(r.in_band(), "{r:?}");
        // J0 = J: a single sample
        let r = dyadic_ratio_check(&recip, 10, 1.0, 4, 10_000).unwrap();
        assert_eq!(r.j, 4);
        assert!(r.in_band(), "{r:?}");
        assert!(dyadic_ratio_check(&[1.0, 2.0], 2, 1.0, 1, 2).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn gallagher_monotone(n1 in 1u64..400, extra in 0u64..400, c in 1i64..8) {
            let grid: Vec<BigRational> = (0..16).map(|j| ratio(64 * j + 1, 1024)).collect();
            let z = [RealSpec::zero()];
            let small = ApproxFunction::Reciprocal(ratio(c, 8));
            let big = ApproxFunction::Reciprocal(ratio(c + 1, 8));
            let a = gallagher_counter(&[], &z, &small, &grid, n1).unwrap();
            let b = gallagher_counter(&[], &z, &small, &grid, n1 + extra).unwrap();
            let d = gallagher_counter(&[], &z, &big, &grid, n1).unwrap();
            for i in 0..grid.len() {
                prop_assert!(a.counts[i] <= b.counts[i]);
                prop_assert!(a.counts[i] <= d.counts[i]);
            }
        }

        #[test]
        fn dyadic_band_for_power_laws(p in 0.0f64..1.5, kappa in 0.0f64..3.0, c in 2u64..6) {
            let h: Vec<f64> = (1..=20_000).map(|n| libm::pow(n as f64, -p)).collect();
            let r = dyadic_ratio_check(&h, c, kappa, 1, 20_000).unwrap();
            prop_assert!(r.in_band(), "{:?}", r);
        }
    }
}
