//! Ostrowski numeration relative to the denominators `q_k` of a continued
//! fraction, shifts `γ = Σ b_{k+1} D_k` given by digit sequences, the `Σ`
//! functional for `‖nα − γ‖`, and pairs built from rapidly growing
//! partial quotients.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::contfrac::{ContinuedFraction, QuotientSource};
use crate::error::{DigitRule, Error, Result};
use crate::numbers::{self, log, BigRational, Enclosure, RealSpec};

fn to_u(x: &BigInt) -> BigUint {
    x.to_biguint().expect("non-negative")
}

fn to_i(x: &BigUint) -> BigInt {
    BigInt::from_biguint(Sign::Plus, x.clone())
}

/// Lazily extended table of `a_k`, `p_k`, `q_k` for one expansion.
#[derive(Clone, Debug)]
pub struct Scale {
    cf: ContinuedFraction,
    a: Vec<BigUint>,
    p: Vec<BigInt>,
    q: Vec<BigUint>,
}

impl Scale {
    pub fn new(cf: &ContinuedFraction) -> Result<Self> {
        let a0 = cf.a0();
        let a1 = cf.quotient(1).ok_or(Error::DepthExceeded {
            needed: 1,
            available: 0,
        })?;
        let a1u = to_u(&a1);
        Ok(Scale {
            cf: cf.clone(),
            a: vec![BigUint::zero(), a1u.clone()],
            p: vec![a0.clone(), &a1 * &a0 + BigInt::one()],
            q: vec![BigUint::one(), a1u],
        })
    }

    pub fn cf(&self) -> &ContinuedFraction {
        &self.cf
    }

    /// Makes `q_k` available.
    pub fn extend_to(&mut self, k: usize) -> Result<()> {
        while self.q.len() <= k {
            let j = self.q.len();
            let a = self.cf.quotient(j).ok_or(Error::DepthExceeded {
                needed: k,
                available: j - 1,
            })?;
            let au = to_u(&a);
            let q = &au * &self.q[j - 1] + &self.q[j - 2];
            let p = &a * &self.p[j - 1] + &self.p[j - 2];
            self.a.push(au);
            self.q.push(q);
            self.p.push(p);
        }
        Ok(())
    }

    pub fn a(&mut self, k: usize) -> Result<&BigUint> {
        self.extend_to(k)?;
        Ok(&self.a[k])
    }

    pub fn q(&mut self, k: usize) -> Result<&BigUint> {
        self.extend_to(k)?;
        Ok(&self.q[k])
    }

    pub fn p(&mut self, k: usize) -> Result<&BigInt> {
        self.extend_to(k)?;
        Ok(&self.p[k])
    }

    /// The `K` with `q_K <= n < q_{K+1}`, taking the largest such index.
    pub fn sandwich(&mut self, n: &BigUint) -> Result<usize> {
        let mut k = 0;
        loop {
            self.extend_to(k + 1)?;
            if self.q[k + 1] > *n {
                return Ok(k);
            }
            k += 1;
        }
    }

    /// Table length currently computed.
    pub fn depth(&self) -> usize {
        self.q.len() - 1
    }
}

/// Digits `c_1, ..., c_{K+1}` of `n = Σ c_{k+1} q_k`. `digits[k]` is `c_{k+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OstrowskiDigits {
    pub digits: Vec<BigUint>,
}

impl OstrowskiDigits {
    /// `c_{k+1}`, zero past the end.
    pub fn c(&self, k_plus_one: usize) -> BigUint {
        if k_plus_one == 0 {
            return BigUint::zero();
        }
        self.digits.get(k_plus_one - 1).cloned().unwrap_or_default()
    }
}

/// Greedy expansion of `n >= 1`.
pub fn encode_with(n: &BigUint, scale: &mut Scale) -> Result<OstrowskiDigits> {
    if n.is_zero() {
        return Err(Error::param("Ostrowski expansion needs n >= 1"));
    }
    let top = scale.sandwich(n)?;
    let mut digits = vec![BigUint::zero(); top + 1];
    let mut rem = n.clone();
    for k in (0..=top).rev() {
        let (c, r) = rem.div_rem(&scale.q[k]);
        digits[k] = c;
        rem = r;
    }
    Ok(OstrowskiDigits { digits })
}

pub fn ostrowski_encode(n: &BigUint, cf: &ContinuedFraction) -> Result<OstrowskiDigits> {
    encode_with(n, &mut Scale::new(cf)?)
}

/// Checks the three digit rules against the partial quotients.
pub fn validate_with(d: &[BigUint], scale: &mut Scale) -> Result<()> {
    for (k, c) in d.iter().enumerate() {
        let a = scale.a(k + 1)?.clone();
        if k == 0 {
            if *c >= a {
                return Err(Error::InvalidDigits(DigitRule::FirstBelowA1 {
                    c1: c.to_string(),
                    a1: a.to_string(),
                }));
            }
            continue;
        }
        if *c > a {
            return Err(Error::InvalidDigits(DigitRule::AtMostQuotient {
                index: k + 1,
                digit: c.to_string(),
                quotient: a.to_string(),
            }));
        }
        if *c == a && !d[k - 1].is_zero() {
            return Err(Error::InvalidDigits(DigitRule::FullDigitNeedsZeroBelow {
                index: k + 1,
            }));
        }
    }
    Ok(())
}

pub fn decode_with(d: &OstrowskiDigits, scale: &mut Scale) -> Result<BigUint> {
    validate_with(&d.digits, scale)?;
    let mut n = BigUint::zero();
    for (k, c) in d.digits.iter().enumerate() {
        n += c * scale.q(k)?;
    }
    Ok(n)
}

pub fn ostrowski_decode(d: &OstrowskiDigits, cf: &ContinuedFraction) -> Result<BigUint> {
    decode_with(d, &mut Scale::new(cf)?)
}

/// Increasing enumeration of the cylinder `A(d_1, ..., d_{m+1})`: the
/// positive integers whose first `m + 1` Ostrowski digits are prescribed.
pub struct Cylinder {
    scale: Scale,
    prefix_len: usize,
    /// Full digit string of the current element.
    digits: Vec<BigUint>,
    value: BigUint,
    started: bool,
}

impl Cylinder {
    pub fn new(prefix: &[BigUint], cf: &ContinuedFraction) -> Result<Self> {
        if prefix.is_empty() {
            return Err(Error::param("cylinder prefix must have at least one digit"));
        }
        let mut scale = Scale::new(cf)?;
        validate_with(prefix, &mut scale)?;
        let mut value = BigUint::zero();
        for (k, c) in prefix.iter().enumerate() {
            value += c * scale.q(k)?;
        }
        Ok(Cylinder {
            scale,
            prefix_len: prefix.len(),
            digits: prefix.to_vec(),
            value,
            started: false,
        })
    }

    fn digit(&self, k: usize) -> BigUint {
        self.digits.get(k).cloned().unwrap_or_default()
    }

    /// Moves to the next element: raise the lowest tail digit that can be
    /// raised once every tail digit below it is reset to zero.
    fn advance(&mut self) -> Result<()> {
        let mut k = self.prefix_len;
        loop {
            let a = self.scale.a(k + 1)?.clone();
            let c = self.digit(k);
            let below_zero = k > self.prefix_len || self.digits[k - 1].is_zero();
            let above_full = {
                let a_up = self.scale.a(k + 2)?.clone();
                self.digit(k + 1) == a_up
            };
            let raised = &c + 1u32;
            let ok = raised <= a && (raised < a || below_zero) && !above_full;
            if ok {
                // zero tail digits below k
                for j in self.prefix_len..k.min(self.digits.len()) {
                    if !self.digits[j].is_zero() {
                        let q = self.scale.q(j)?.clone();
                        self.value -= &self.digits[j] * q;
                        self.digits[j] = BigUint::zero();
                    }
                }
                if self.digits.len() <= k {
                    self.digits.resize(k + 1, BigUint::zero());
                }
                self.digits[k] = raised;
                self.value += self.scale.q(k)?.clone();
                return Ok(());
            }
            k += 1;
        }
    }

    /// Next element of the cylinder.
    pub fn next_element(&mut self) -> Result<BigUint> {
        if !self.started {
            self.started = true;
            if !self.value.is_zero() {
                return Ok(self.value.clone());
            }
        }
        self.advance()?;
        Ok(self.value.clone())
    }

    /// Digits of the element last returned.
    pub fn digits(&self) -> &[BigUint] {
        &self.digits
    }

    pub fn scale_mut(&mut self) -> &mut Scale {
        &mut self.scale
    }
}

/// First `count` elements of `A(prefix)` in increasing order.
pub fn cylinder_elements(
    prefix: &[BigUint],
    cf: &ContinuedFraction,
    count: usize,
) -> Result<Vec<BigUint>> {
    let mut c = Cylinder::new(prefix, cf)?;
    (0..count).map(|_| c.next_element()).collect()
}

/// Elements of `A(prefix)` not exceeding `bound`.
pub fn cylinder_up_to(
    prefix: &[BigUint],
    cf: &ContinuedFraction,
    bound: &BigUint,
) -> Result<Vec<BigUint>> {
    let mut c = Cylinder::new(prefix, cf)?;
    let mut out = Vec::new();
    loop {
        let n = c.next_element()?;
        if n > *bound {
            return Ok(out);
        }
        out.push(n);
    }
}

/// Outcome of checking the gap pattern of one cylinder.
#[derive(Clone, Debug)]
pub struct GapsCheck {
    pub elements: usize,
    /// Distinct gap sizes seen, ascending.
    pub sizes: Vec<BigUint>,
    pub holds: bool,
}

/// Checks the gap pattern of `A(d_1, ..., d_{m+1})` up to `bound`: for
/// `d_{m+1} > 0` every gap is at least `q_{m+1}`; for `d_{m+1} = 0` every gap
/// is `q_{m+1}` or `q_m`, and each `q_m` gap follows a run of at least
/// `a_{m+2}` gaps of size `q_{m+1}`.
pub fn check_gap_pattern(
    prefix: &[BigUint],
    cf: &ContinuedFraction,
    bound: &BigUint,
) -> Result<GapsCheck> {
    let elems = cylinder_up_to(prefix, cf, bound)?;
    let m = prefix.len() - 1;
    let mut scale = Scale::new(cf)?;
    let q_m = scale.q(m)?.clone();
    let q_next = scale.q(m + 1)?.clone();
    let a_next = scale.a(m + 2)?.clone();
    let gaps: Vec<BigUint> = elems.windows(2).map(|w| &w[1] - &w[0]).collect();
    let mut sizes = gaps.clone();
    sizes.sort();
    sizes.dedup();
    let holds = if !prefix[m].is_zero() {
        gaps.iter().all(|g| *g >= q_next)
    } else if q_m == q_next {
        gaps.iter().all(|g| *g == q_m)
    } else {
        let mut run = BigUint::zero();
        let mut ok = true;
        for (i, g) in gaps.iter().enumerate() {
            if *g == q_next {
                run += 1u32;
            } else if *g == q_m {
                // the first run may be cut short by the start of the list
                ok &= run >= a_next || run == BigUint::from(i);
                run = BigUint::zero();
            } else {
                ok = false;
            }
        }
        ok
    };
    Ok(GapsCheck {
        elements: elems.len(),
        sizes,
        holds,
    })
}

/// How the digits `b_k` continue past the explicit prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TailRule {
    Zero,
    Constant(BigUint),
    /// `b_k = floor(a_k / 2)`.
    Half,
    /// `b_k = floor(a_k / 4)`.
    Quarter,
    /// `b_k = a_k / 2^{1 + σ_k}`; `σ_k = 0` past the end of the list.
    Sigma(Vec<bool>),
}

/// `γ = Σ_{k>=0} b_{k+1} D_k` relative to a fixed `α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaDigits {
    pub prefix: Vec<BigUint>,
    pub tail: TailRule,
}

impl GammaDigits {
    pub fn zero() -> Self {
        GammaDigits {
            prefix: Vec::new(),
            tail: TailRule::Zero,
        }
    }

    /// `b_k` for `k >= 1`, given `a_k`.
    pub fn b_with(&self, k: usize, a_k: &BigUint) -> BigUint {
        if k == 0 {
            return BigUint::zero();
        }
        if let Some(b) = self.prefix.get(k - 1) {
            return b.clone();
        }
        match &self.tail {
            TailRule::Zero => BigUint::zero(),
            TailRule::Constant(c) => c.clone(),
            TailRule::Half => a_k >> 1usize,
            TailRule::Quarter => a_k >> 2usize,
            TailRule::Sigma(bits) => {
                let s = bits.get(k - 1).copied().unwrap_or(false);
                a_k >> (1 + s as usize)
            }
        }
    }

    pub fn b(&self, k: usize, scale: &mut Scale) -> Result<BigUint> {
        if k == 0
            || k <= self.prefix.len()
            || matches!(self.tail, TailRule::Zero | TailRule::Constant(_))
        {
            return Ok(self.b_with(k, &BigUint::zero()));
        }
        let a = scale.a(k)?.clone();
        Ok(self.b_with(k, &a))
    }

    /// Bound on `Σ_{k>=t} b_{k+1} |D_k|` for `t >= prefix.len()`.
    fn tail_bound(&self, t: usize, scale: &mut Scale) -> Result<BigRational> {
        let c = match &self.tail {
            TailRule::Zero => return Ok(BigRational::zero()),
            TailRule::Constant(c) => to_i(c).max(BigInt::one()),
            _ => BigInt::one(),
        };
        // b_{k+1}|D_k| <= max(c, 1)/q_k and Σ_{k>=t} 1/q_k <= 4/q_t
        Ok(numbers::ratio(c * 4, to_i(scale.q(t)?)))
    }
}

/// An `(α, γ)` pair with `α` given by its expansion.
#[derive(Clone, Debug)]
pub struct Pair {
    pub cf: ContinuedFraction,
    pub gamma: GammaDigits,
}

impl Pair {
    pub fn alpha(&self) -> RealSpec {
        RealSpec::Stream(self.cf.clone())
    }

    /// Checks `a_0 = 0`, `a_k >= 64` and `a_k/4 <= b_k <= a_k/2` for the
    /// first `depth` quotients (or as many as the expansion has).
    pub fn check_dandy_andy(&self, depth: usize) -> Result<()> {
        if !self.cf.a0().is_zero() {
            return Err(Error::param("a_0 must be 0"));
        }
        let mut scale = Scale::new(&self.cf)?;
        for k in 1..=depth {
            let a = match scale.a(k) {
                Ok(a) => a.clone(),
                Err(Error::DepthExceeded { .. }) if k > 1 => break,
                Err(e) => return Err(e),
            };
            if a < BigUint::from(64u32) {
                return Err(Error::param(format!("a_{k} = {a} is below 64")));
            }
            let b = self.gamma.b(k, &mut scale)?;
            let four_b = &b << 2usize;
            let two_b = &b << 1usize;
            if four_b < a || two_b > a {
                return Err(Error::param(format!(
                    "b_{k} = {b} outside [a_{k}/4, a_{k}/2] with a_{k} = {a}"
                )));
            }
        }
        Ok(())
    }
}

/// `Σ_{k<t} b_{k+1} q_k` and `Σ_{k<t} b_{k+1} p_k`, so the truncated sum
/// is `Bq·α − Bp`.
fn gamma_partials(g: &GammaDigits, t: usize, scale: &mut Scale) -> Result<(BigInt, BigInt)> {
    let (mut bq, mut bp) = (BigInt::zero(), BigInt::zero());
    for k in 0..t {
        let b = to_i(&g.b(k + 1, scale)?);
        if b.is_zero() {
            continue;
        }
        bq += &b * to_i(scale.q(k)?);
        bp += &b * scale.p(k)?;
    }
    Ok((bq, bp))
}

/// Smallest `t >= from` with `tail_bound(t) <= w`.
fn tail_depth(g: &GammaDigits, from: usize, w: &BigRational, scale: &mut Scale) -> Result<usize> {
    let mut t = from.max(g.prefix.len());
    loop {
        if g.tail_bound(t, scale)? <= *w {
            return Ok(t);
        }
        t += 1;
    }
}

fn gamma_with(pair: &Pair, width: &BigRational, scale: &mut Scale) -> Result<Enclosure> {
    let quarter = width / numbers::int(4);
    let t = match tail_depth(&pair.gamma, 0, &quarter, scale) {
        Ok(t) => t,
        Err(Error::DepthExceeded { .. }) => {
            return Err(Error::unattainable(gamma_best(pair, scale)?))
        }
        Err(e) => return Err(e),
    };
    let tail = pair.gamma.tail_bound(t, scale)?;
    let (bq, bp) = gamma_partials(&pair.gamma, t, scale)?;
    let w_alpha = if bq.is_zero() {
        width.clone()
    } else {
        width / numbers::int(bq.abs() * 2)
    };
    let a = pair.alpha().enclose(&w_alpha)?;
    let core = a.mul_int(&bq).shift(&-numbers::int(bp));
    Ok(Enclosure::new(core.lo() - &tail, core.hi() + &tail))
}

fn gamma_best(pair: &Pair, scale: &mut Scale) -> Result<Enclosure> {
    let t = scale.depth().max(pair.gamma.prefix.len());
    let t = t.min(scale.depth());
    let tail = pair.gamma.tail_bound(t, scale)?;
    let (bq, bp) = gamma_partials(&pair.gamma, t, scale)?;
    let a = pair.cf.enclosure_at(scale.depth())?;
    let core = a.mul_int(&bq).shift(&-numbers::int(bp));
    Ok(Enclosure::new(core.lo() - &tail, core.hi() + &tail))
}

/// Enclosure of `γ = Σ b_{k+1} D_k` of width at most `width`.
pub fn gamma_from_digits(pair: &Pair, width: &BigRational) -> Result<Enclosure> {
    if !width.is_positive() {
        return Err(Error::param("target width must be positive"));
    }
    gamma_with(pair, width, &mut Scale::new(&pair.cf)?)
}

/// Certified `0 < α < 1/64` and `0 <= γ < 1 − α`.
#[derive(Clone, Debug)]
pub struct PairCertificate {
    pub alpha: Enclosure,
    pub gamma: Enclosure,
}

pub fn certify_pair(pair: &Pair) -> Result<PairCertificate> {
    let budget = numbers::Budget::default();
    let zero = BigRational::zero();
    let one = BigRational::one();
    let max_alpha = numbers::ratio(1, 64);
    numbers::resolve::resolve(&budget, |w| {
        let a = match pair.alpha().enclose(w) {
            Ok(a) => a,
            Err(Error::PrecisionUnattainable { best }) => *best,
            Err(e) => return Err(e),
        };
        let g = match gamma_from_digits(pair, w) {
            Ok(g) => g,
            Err(Error::PrecisionUnattainable { best }) => *best,
            Err(e) => return Err(e),
        };
        let sum = &a + &g;
        if *a.lo() > zero && *a.hi() < max_alpha && *g.lo() >= zero && *sum.hi() < one {
            Ok(Some(PairCertificate { alpha: a, gamma: g }))
        } else if *a.hi() <= zero || *a.lo() >= max_alpha || *g.hi() < zero || *sum.lo() >= one {
            Err(Error::NotCertified(
                "pair violates 0 < α < 1/64 or 0 <= γ < 1 − α".into(),
            ))
        } else {
            Ok(None)
        }
    })
}

/// `Σ = Σ δ_{k+1} D_k` for one `n`, with `δ_{k+1} = c_{k+1}(n) − b_{k+1}`.
#[derive(Clone, Debug)]
pub struct SigmaDecomposition {
    pub n: BigUint,
    pub c: OstrowskiDigits,
    /// `δ_1, δ_2, ...` up to the truncation depth.
    pub delta: Vec<BigInt>,
    /// Least `i >= 0` with `δ_{i+1} != 0`.
    pub m: usize,
    pub sigma: Enclosure,
    /// `min(|Σ|, 1 − |Σ|)`.
    pub distance: Enclosure,
    /// `‖nα − γ‖` from enclosures of `α` and `γ` directly.
    pub direct: Enclosure,
}

/// Evaluates [`SigmaDecomposition`]s for many `n <= n_max` at a fixed
/// width, sharing the enclosures of `α` and `γ`.
pub struct SigmaEngine<'a> {
    pair: &'a Pair,
    scale: Scale,
    t: usize,
    /// `tail` rounded up onto the grid.
    tail_grid: BigInt,
    /// Endpoints of `α` and `γ` as numerators over `2^bits`.
    bits: u32,
    alpha: (BigInt, BigInt),
    gamma: (BigInt, BigInt),
    n_max: BigUint,
}

/// `‖x‖` for `x ∈ [lo, hi] / den`, as an enclosure.
fn grid_distance(lo: BigInt, hi: BigInt, den: &BigInt) -> Enclosure {
    let f = lo.div_floor(den) * den;
    let (lo, hi) = (lo - &f, hi - &f);
    if hi > *den {
        return Enclosure::new(
            BigRational::new(lo, den.clone()),
            BigRational::new(hi, den.clone()),
        )
        .dist_nearest_integer();
    }
    let half = den >> 1usize;
    let (a, b) = if hi <= half {
        (lo, hi)
    } else if lo >= half {
        (den - &hi, den - &lo)
    } else {
        (lo.min(den - &hi), half)
    };
    Enclosure::new(
        BigRational::new(a, den.clone()),
        BigRational::new(b, den.clone()),
    )
}

/// Least `b` with `2^-b <= w` (up to one extra bit).
fn grid_bits(w: &BigRational) -> u32 {
    let inv = (w.denom() / w.numer()).magnitude().bits();
    (inv + 1) as u32
}

impl<'a> SigmaEngine<'a> {
    pub fn new(pair: &'a Pair, width: &BigRational, n_max: &BigUint) -> Result<Self> {
        if !width.is_positive() {
            return Err(Error::param("target width must be positive"));
        }
        let mut scale = Scale::new(&pair.cf)?;
        let k = scale.sandwich(&n_max.max(&BigUint::one()).clone())?;
        let quarter = width / numbers::int(4);
        let t = tail_depth(&pair.gamma, k + 1, &quarter, &mut scale)?;
        let tail = pair.gamma.tail_bound(t, &mut scale)?;
        let (bq, _) = gamma_partials(&pair.gamma, t, &mut scale)?;
        // Σ |δ_{k+1}| q_k <= n + Σ b_{k+1} q_k
        let spread = to_i(n_max) + bq.abs() + 1;
        // dyadic endpoints keep the per-n sums cheap; half of each share
        // goes to the enclosure, half to the rounding
        let w_alpha = &quarter / numbers::int(spread);
        let half = numbers::ratio(1, 2);
        let bits = grid_bits(&(&w_alpha / numbers::int(4)));
        let alpha = pair.alpha().enclose(&(&w_alpha * &half))?;
        let gamma = gamma_with(pair, &(&quarter * &half), &mut scale)?;
        let on_grid = |e: &Enclosure| {
            (
                numbers::scaled(e.lo(), bits, false),
                numbers::scaled(e.hi(), bits, true),
            )
        };
        let tail_grid = numbers::scaled(&tail, bits, true);
        Ok(SigmaEngine {
            pair,
            scale,
            t,
            tail_grid,
            bits,
            alpha: on_grid(&alpha),
            gamma: on_grid(&gamma),
            n_max: n_max.clone(),
        })
    }

    pub fn scale_mut(&mut self) -> &mut Scale {
        &mut self.scale
    }

    pub fn decompose(&mut self, n: &BigUint) -> Result<SigmaDecomposition> {
        if *n > self.n_max {
            return Err(Error::param(format!(
                "n = {n} exceeds the engine bound {}",
                self.n_max
            )));
        }
        let scale = &mut self.scale;
        let c = encode_with(n, scale)?;
        let mut delta = Vec::with_capacity(self.t);
        let (mut s_lo, mut s_hi) = (BigInt::zero(), BigInt::zero());
        for k in 0..self.t {
            let d = to_i(&c.c(k + 1)) - to_i(&self.pair.gamma.b(k + 1, scale)?);
            if !d.is_zero() {
                // D_k = q_k α − p_k, increasing in α since q_k >= 0
                let q = to_i(scale.q(k)?);
                let p = scale.p(k)? << self.bits as usize;
                let lo = &q * &self.alpha.0 - &p;
                let hi = &q * &self.alpha.1 - &p;
                if d.is_positive() {
                    s_lo += &d * lo;
                    s_hi += &d * hi;
                } else {
                    s_lo += &d * hi;
                    s_hi += &d * lo;
                }
            }
            delta.push(d);
        }
        let m = delta
            .iter()
            .position(|d| !d.is_zero())
            .ok_or_else(|| Error::NotCertified("all computed δ digits vanish".into()))?;
        s_lo -= &self.tail_grid;
        s_hi += &self.tail_grid;
        let den = BigInt::one() << self.bits as usize;
        // |Σ| and 1 − |Σ| on the grid
        let (a_lo, a_hi) = if !s_lo.is_negative() {
            (s_lo.clone(), s_hi.clone())
        } else if !s_hi.is_positive() {
            (-&s_hi, -&s_lo)
        } else {
            (BigInt::zero(), (-&s_lo).max(s_hi.clone()))
        };
        let (o_lo, o_hi) = (&den - &a_hi, &den - &a_lo);
        let (d_lo, d_hi) = if a_hi <= o_lo {
            (a_lo, a_hi)
        } else if o_hi <= a_lo {
            (o_lo, o_hi)
        } else {
            (a_lo.min(o_lo), a_hi.min(o_hi))
        };
        let nn = to_i(n);
        let direct = grid_distance(
            &nn * &self.alpha.0 - &self.gamma.1,
            &nn * &self.alpha.1 - &self.gamma.0,
            &den,
        );
        let r = |x: BigInt| BigRational::new(x, den.clone());
        let sigma = Enclosure::new(r(s_lo), r(s_hi));
        let distance = Enclosure::new(r(d_lo), r(d_hi));
        if !direct.intersects(&distance) {
            return Err(Error::NotCertified(format!(
                "sigma and direct routes disagree at n = {n}"
            )));
        }
        Ok(SigmaDecomposition {
            n: n.clone(),
            c,
            delta,
            m,
            sigma,
            distance,
            direct,
        })
    }
}

/// Sigma route for `‖nα − γ‖`, cross-checked against the direct route.
pub fn sigma_decompose(
    n: &BigUint,
    pair: &Pair,
    width: &BigRational,
) -> Result<SigmaDecomposition> {
    SigmaEngine::new(pair, width, n)?.decompose(n)
}

/// Growth rule for [`sharpness_construct`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Schedule {
    /// `a_{u+1}` = least multiple of 64 that is at least `q_u!`.
    Factorial,
    /// `a_{u+1} = 64·q_u^3`; far slower than factorial growth, but it
    /// exercises the same digit mechanics at any depth.
    Relaxed,
}

/// Largest bit length of `q_u!` the factorial schedule will build.
pub const FACTORIAL_BIT_BUDGET: u64 = 1 << 22;

fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Builds `α = [0; a_1, ..., a_depth]` with `a_u ∈ 64ℕ` and
/// `b_i = a_i / 2^{1+σ_i}`.
pub fn sharpness_construct(sigma: &[bool], schedule: Schedule, depth: usize) -> Result<Pair> {
    if depth == 0 {
        return Err(Error::param("depth must be at least 1"));
    }
    let sixty_four = BigUint::from(64u32);
    let mut a: Vec<BigUint> = Vec::with_capacity(depth);
    let (mut q_prev, mut q) = (BigUint::zero(), BigUint::one());
    for u in 0..depth {
        let next = match schedule {
            Schedule::Factorial => {
                // q_u! has about q_u log2 q_u bits
                let qu = q.to_u64().filter(|&v| {
                    v.saturating_mul(64 - v.leading_zeros() as u64) <= FACTORIAL_BIT_BUDGET
                });
                let Some(qu) = qu else {
                    return Err(Error::DepthExceeded {
                        needed: depth,
                        available: u,
                    });
                };
                let f = factorial(qu);
                let r = &f % &sixty_four;
                if r.is_zero() {
                    f
                } else {
                    f + (&sixty_four - r)
                }
            }
            Schedule::Relaxed => &sixty_four * &q * &q * &q,
        };
        let nq = &next * &q + &q_prev;
        q_prev = core::mem::replace(&mut q, nq);
        a.push(next);
    }
    let mut quotients = vec![BigInt::zero()];
    quotients.extend(a.iter().map(to_i));
    let b: Vec<BigUint> = a
        .iter()
        .enumerate()
        .map(|(i, ai)| ai >> (1 + sigma.get(i).copied().unwrap_or(false) as usize))
        .collect();
    Ok(Pair {
        cf: ContinuedFraction::prefix(quotients)?,
        gamma: GammaDigits {
            prefix: b,
            tail: TailRule::Sigma(sigma.to_vec()),
        },
    })
}

/// `a_{u+1} >= q_u!` for every constructed term (factorial schedule check).
pub fn check_factorial_growth(pair: &Pair) -> Result<bool> {
    let QuotientSource::Prefix(v) = pair.cf.source() else {
        return Err(Error::param("expected a constructed prefix expansion"));
    };
    let mut scale = Scale::new(&pair.cf)?;
    for u in 0..v.len() - 1 {
        let q = scale.q(u)?.clone();
        let Some(qu) = q.to_u64().filter(|&x| x < 1 << 20) else {
            return Err(Error::budget(format!(
                "q_{u} too large to take a factorial"
            )));
        };
        if *scale.a(u + 1)? < factorial(qu) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Which case of the `S_{u,d}` estimate applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SudBranch {
    /// `d > b_{u+1}`.
    Above,
    /// `d = b_{u+1}`; the minus cylinder is `A(b_1, ..., b_u, 0)`.
    Equal,
    /// `d < b_{u+1}`.
    Below,
}

#[derive(Clone, Debug)]
pub struct SudReport {
    pub u: usize,
    pub d: BigUint,
    pub branch: SudBranch,
    /// Number of `n <= n_max` in `W_{u,d}`.
    pub count: usize,
    /// Partial sum of `1/(n (log n)^2 ‖nα − γ‖)` over those `n`.
    pub sum: Enclosure,
    pub min_w: Option<BigUint>,
    /// `min W_{u,d} / q_u`.
    pub min_over_qu: Option<BigRational>,
    /// No element of `W_{u,d}` up to `n_max`.
    pub empty: bool,
    /// The right-hand side of the estimate for this branch, without its
    /// implied constant.
    pub estimate: f64,
}

/// `W_{u,d} = {n : m(n) = u, |δ_{u+1}(n)| = d}` as the union of the
/// cylinders `A(b_1, ..., b_u, b_{u+1} ± d)`.
pub fn w_set(u: usize, d: &BigUint, pair: &Pair, n_max: &BigUint) -> Result<Vec<BigUint>> {
    let mut scale = Scale::new(&pair.cf)?;
    let a = scale.a(u + 1)?.clone();
    let b_next = pair.gamma.b(u + 1, &mut scale)?;
    let mut prefix: Vec<BigUint> = (1..=u)
        .map(|k| pair.gamma.b(k, &mut scale))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    let plus = &b_next + d;
    let mut candidates = Vec::new();
    if plus <= a {
        candidates.push(plus);
    }
    if *d <= b_next {
        candidates.push(&b_next - d);
    }
    for digit in candidates {
        prefix.push(digit);
        match cylinder_up_to(&prefix, &pair.cf, n_max) {
            Ok(v) => out.extend(v),
            Err(Error::InvalidDigits(_)) => {}
            Err(e) => return Err(e),
        }
        prefix.pop();
    }
    out.sort();
    Ok(out)
}

/// Partial sum of `S_{u,d}` over `n <= n_max`.
pub fn sud_partial_sum(u: usize, d: &BigUint, pair: &Pair, n_max: &BigUint) -> Result<SudReport> {
    let mut scale = Scale::new(&pair.cf)?;
    let a = scale.a(u + 1)?.clone();
    let b = pair.gamma.b(u + 1, &mut scale)?;
    if d.is_zero() || *d > &a - &b {
        return Err(Error::param(format!(
            "d = {d} outside 1..=a_{} − b_{} = {}",
            u + 1,
            u + 1,
            &a - &b
        )));
    }
    let branch = match d.cmp(&b) {
        core::cmp::Ordering::Greater => SudBranch::Above,
        core::cmp::Ordering::Equal => SudBranch::Equal,
        core::cmp::Ordering::Less => SudBranch::Below,
    };
    let members = w_set(u, d, pair, n_max)?;
    // a constructed prefix only pins γ down to about 1/q_last
    let width = match pair.cf.last_index() {
        Some(last) if !pair.cf.is_finite() => {
            let w = numbers::ratio(256, to_i(scale.q(last)?));
            w.max(numbers::pow2_inv(128))
        }
        _ => numbers::pow2_inv(128),
    };
    let mut engine = SigmaEngine::new(pair, &width, n_max)?;
    let mut sum = Enclosure::zero();
    for n in &members {
        let dist = engine.decompose(n)?;
        let dist = dist
            .direct
            .intersection(&dist.distance)
            .unwrap_or(dist.direct);
        let nr = numbers::int(to_i(n));
        let l = log::max_log_enclosure(&nr)?;
        let denom = &(&Enclosure::point(nr) * &(&l * &l)) * &dist;
        let term = denom.recip().ok_or_else(|| {
            Error::NotCertified(format!("‖nα − γ‖ not separated from 0 at n = {n}"))
        })?;
        sum = (&sum + &term).round_outward(256);
    }
    let qu = to_i(scale.q(u)?);
    let qn = to_i(scale.q(u + 1)?);
    let min_w = members.first().cloned();
    let min_over_qu = min_w.as_ref().map(|m| numbers::ratio(to_i(m), qu.clone()));
    let lq = |x: &BigInt| log::max_log_bigint(x);
    let df = d.to_f64().unwrap_or(f64::INFINITY);
    let estimate = match branch {
        SudBranch::Above => 1.0 / (df * lq(&qn)),
        SudBranch::Equal => 1.0 / lq(&qu),
        SudBranch::Below => {
            let bd = to_i(&(&b - d)) * &qu;
            let ratio = numbers::to_f64(&numbers::ratio(qn.clone(), bd.clone()));
            ratio / (lq(&bd) * lq(&bd) * df) + 1.0 / (df * lq(&qn))
        }
    };
    Ok(SudReport {
        u,
        d: d.clone(),
        branch,
        count: members.len(),
        sum,
        empty: members.is_empty(),
        min_w,
        min_over_qu,
        estimate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::{pow10_inv, ratio};
    use proptest::prelude::*;
    use std::vec::Vec;

    fn u(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    fn cf(id: &str) -> ContinuedFraction {
        ContinuedFraction::named(id).unwrap()
    }

    #[test]
    fn golden_four() {
        let d = ostrowski_encode(&BigUint::from(4u32), &cf("golden_conjugate")).unwrap();
        // 4 = 1·q_3 + 1·q_1 with q = 1, 1, 2, 3
        assert_eq!(d.digits, u(&[0, 1, 0, 1]));
        assert_eq!(
            ostrowski_decode(&d, &cf("golden_conjugate")).unwrap(),
            BigUint::from(4u32)
        );
    }

    #[test]
    fn denominators_have_single_digit() {
        let c = cf("sqrt2");
        let t = crate::contfrac::convergents(&c, 8).unwrap();
        for k in 1..=8 {
            let d = ostrowski_encode(&to_u(&t.q[k]), &c).unwrap();
            let mut want = vec![BigUint::zero(); k + 1];
            want[k] = BigUint::one();
            assert_eq!(d.digits, want);
        }
        let c3 = cf("const:7");
        assert_eq!(
            ostrowski_encode(&BigUint::from(6u32), &c3).unwrap().digits,
            u(&[6])
        );
    }

    #[test]
    fn validator_names_the_rule() {
        let g = cf("golden_conjugate");
        let e = ostrowski_decode(&OstrowskiDigits { digits: u(&[1]) }, &g).unwrap_err();
        assert!(matches!(
            e,
            Error::InvalidDigits(DigitRule::FirstBelowA1 { .. })
        ));
        let c = cf("const:3");
        let e = ostrowski_decode(&OstrowskiDigits { digits: u(&[0, 4]) }, &c).unwrap_err();
        assert!(matches!(
            e,
            Error::InvalidDigits(DigitRule::AtMostQuotient { index: 2, .. })
        ));
        let e = ostrowski_decode(&OstrowskiDigits { digits: u(&[1, 3]) }, &c).unwrap_err();
        assert!(matches!(
            e,
            Error::InvalidDigits(DigitRule::FullDigitNeedsZeroBelow { index: 2 })
        ));
        assert!(cylinder_elements(&u(&[1]), &g, 3).is_err());
    }

    fn scan_cylinder(prefix: &[BigUint], c: &ContinuedFraction, bound: u64) -> Vec<BigUint> {
        let mut s = Scale::new(c).unwrap();
        (1..=bound)
            .map(BigUint::from)
            .filter(|n| {
                let d = encode_with(n, &mut s).unwrap();
                (0..prefix.len()).all(|k| d.c(k + 1) == prefix[k])
            })
            .collect()
    }

    #[test]
    fn cylinders_match_scan() {
        let c = cf("const:3");
        for prefix in [u(&[1]), u(&[0]), u(&[2, 0]), u(&[0, 3]), u(&[1, 2, 0])] {
            let want = scan_cylinder(&prefix, &c, 2000);
            let got = cylinder_up_to(&prefix, &c, &BigUint::from(2000u32)).unwrap();
            assert_eq!(got, want, "prefix {prefix:?}");
        }
        let first = cylinder_elements(&u(&[1]), &c, 4).unwrap();
        assert_eq!(first, scan_cylinder(&u(&[1]), &c, 200)[..4].to_vec());
        let zero = cylinder_elements(&u(&[0]), &c, 3).unwrap();
        assert_eq!(zero, u(&[3, 6, 9]));
    }

    #[test]
    fn gaps_pattern_on_cylinders() {
        for id in ["const:3", "golden", "sqrt2"] {
            let c = cf(id);
            for prefix in [u(&[0]), u(&[0, 0]), u(&[0, 1]), u(&[0, 1, 0])] {
                if let Ok(r) = check_gap_pattern(&prefix, &c, &BigUint::from(3000u32)) {
                    assert!(r.holds, "{id} {prefix:?} {:?}", r.sizes);
                    assert!(r.elements > 10);
                }
            }
        }
        let r = check_gap_pattern(&u(&[0]), &cf("const:3"), &BigUint::from(100u32)).unwrap();
        assert_eq!(r.sizes, u(&[1, 3]));
    }

    #[test]
    fn gamma_examples() {
        let c = cf("const:64");
        let zero = Pair {
            cf: c.clone(),
            gamma: GammaDigits::zero(),
        };
        assert!(gamma_from_digits(&zero, &pow10_inv(20)).unwrap().is_point());
        let p16 = Pair {
            cf: c.clone(),
            gamma: GammaDigits {
                prefix: vec![],
                tail: TailRule::Constant(16u32.into()),
            },
        };
        p16.check_dandy_andy(30).unwrap();
        certify_pair(&p16).unwrap();
        let p32 = Pair {
            cf: c.clone(),
            gamma: GammaDigits {
                prefix: vec![],
                tail: TailRule::Half,
            },
        };
        let cert = certify_pair(&p32).unwrap();
        // γ <= b_1 D_0 = 32 α
        let g = gamma_from_digits(&p32, &pow10_inv(40)).unwrap();
        let a = p32.alpha().enclose(&pow10_inv(40)).unwrap();
        assert!(g.hi() <= a.scale(&numbers::int(32)).lo());
        assert!(cert.gamma.lo() >= &BigRational::zero());
    }

    #[test]
    fn sigma_examples() {
        let c = cf("const:64");
        let pair = Pair {
            cf: c,
            gamma: GammaDigits {
                prefix: vec![],
                tail: TailRule::Quarter,
            },
        };
        // c_1 = b_1 + 1 = 17
        let s = sigma_decompose(&BigUint::from(17u32), &pair, &pow10_inv(30)).unwrap();
        assert_eq!(s.m, 0);
        assert_eq!(s.delta[0], BigInt::one());
        // n = 16 + 16·64 matches the first two b digits
        let s = sigma_decompose(&BigUint::from(16u32 + 16 * 64), &pair, &pow10_inv(30)).unwrap();
        assert_eq!(s.m, 2);
        assert!(s.distance.hi() < &ratio(1, 64 * 64));
    }

    #[test]
    fn factorial_schedule_two_terms() {
        let p = sharpness_construct(&[false, false], Schedule::Factorial, 2).unwrap();
        let a = p.cf.quotients(2).unwrap();
        assert_eq!(a[1], BigInt::from(64));
        assert_eq!(to_u(&a[2]), factorial(64));
        assert!(check_factorial_growth(&p).unwrap());
        p.check_dandy_andy(2).unwrap();
        certify_pair(&p).unwrap();
        assert!(matches!(
            sharpness_construct(&[], Schedule::Factorial, 3),
            Err(Error::DepthExceeded {
                needed: 3,
                available: 2
            })
        ));
        let q = sharpness_construct(&[true], Schedule::Factorial, 1).unwrap();
        assert_eq!(q.gamma.prefix[0], BigUint::from(16u32));
    }

    #[test]
    fn relaxed_schedule_depth_six() {
        let p = sharpness_construct(
            &[true, false, true, true, false, false],
            Schedule::Relaxed,
            6,
        )
        .unwrap();
        p.check_dandy_andy(6).unwrap();
        certify_pair(&p).unwrap();
    }

    #[test]
    fn sud_branches_and_range() {
        let p = sharpness_construct(&[false, true, false], Schedule::Relaxed, 3).unwrap();
        let nmax = BigUint::from(10_000u32);
        // a_1 = 64, b_1 = 32
        assert!(sud_partial_sum(0, &BigUint::from(33u32), &p, &nmax).is_err());
        assert!(sud_partial_sum(0, &BigUint::zero(), &p, &nmax).is_err());
        let eq = sud_partial_sum(0, &BigUint::from(32u32), &p, &nmax).unwrap();
        assert_eq!(eq.branch, SudBranch::Equal);
        let below = sud_partial_sum(0, &BigUint::from(5u32), &p, &nmax).unwrap();
        assert_eq!(below.branch, SudBranch::Below);
        assert!(!below.empty && below.min_over_qu.unwrap() >= numbers::int(1));
        // scan oracle for W_{0,5} and W_{1,d}
        let mut s = Scale::new(&p.cf).unwrap();
        for (uu, d) in [(0usize, 5u32), (0, 32), (1, 100_000)] {
            let d = BigUint::from(d);
            let got = w_set(uu, &d, &p, &nmax).unwrap();
            let want: Vec<BigUint> = (1..=10_000u32)
                .map(BigUint::from)
                .filter(|n| {
                    let c = encode_with(n, &mut s).unwrap();
                    let delta: Vec<BigInt> = (0..=uu)
                        .map(|k| to_i(&c.c(k + 1)) - to_i(&p.gamma.b(k + 1, &mut s).unwrap()))
                        .collect();
                    delta[..uu].iter().all(|x| x.is_zero()) && delta[uu].abs() == to_i(&d)
                })
                .collect();
            assert_eq!(got, want, "u = {uu}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn roundtrip(n in 1u64..1_000_000, k in 1u32..12) {
            let c = cf(&format!("const:{k}"));
            let d = ostrowski_encode(&BigUint::from(n), &c).unwrap();
            prop_assert_eq!(ostrowski_decode(&d, &c).unwrap(), BigUint::from(n));
        }

        #[test]
        fn random_digits_either_valid_or_rejected(digits in proptest::collection::vec(0u64..5, 1..8)) {
            let c = cf("const:3");
            let d = OstrowskiDigits { digits: u(&digits) };
            match ostrowski_decode(&d, &c) {
                Ok(n) if !n.is_zero() => {
                    let back = ostrowski_encode(&n, &c).unwrap();
                    let mut trimmed = d.digits.clone();
                    while trimmed.last().is_some_and(|x| x.is_zero()) { trimmed.pop(); }
                    prop_assert_eq!(back.digits, trimmed);
                }
                Ok(_) => {}
                Err(e) => prop_assert_eq!(e.kind(), "invalid_digits"),
            }
        }
    }
}
