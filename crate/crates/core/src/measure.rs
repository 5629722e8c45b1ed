//! Exact measures of finite unions of rational intervals, the approximation
//! sets `E_n`, their pairwise overlaps and local densities.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numbers::{self, log, resolve, BigRational, Budget, Enclosure, OrbitDistance, RealSpec};
use crate::shiftred::{Anchors, Eta};

/// Disjoint, sorted, non-empty half-open intervals `[lo, hi)` inside `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntervalSet {
    iv: Vec<(BigRational, BigRational)>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet { iv: Vec::new() }
    }

    pub fn unit() -> Self {
        IntervalSet {
            iv: alloc::vec![(BigRational::zero(), BigRational::one())],
        }
    }

    /// Clips each interval to `[0, 1]` and merges overlapping or touching ones.
    pub fn from_intervals(it: impl IntoIterator<Item = (BigRational, BigRational)>) -> Self {
        let (zero, one) = (BigRational::zero(), BigRational::one());
        let mut v: Vec<(BigRational, BigRational)> = it
            .into_iter()
            .map(|(lo, hi)| {
                (
                    if lo < zero { zero.clone() } else { lo },
                    if hi > one { one.clone() } else { hi },
                )
            })
            .filter(|(lo, hi)| lo < hi)
            .collect();
        v.sort();
        Self::merge_sorted(v)
    }

    fn merge_sorted(v: Vec<(BigRational, BigRational)>) -> Self {
        let mut out: Vec<(BigRational, BigRational)> = Vec::with_capacity(v.len());
        for (lo, hi) in v {
            match out.last_mut() {
                Some(last) if lo <= last.1 => {
                    if hi > last.1 {
                        last.1 = hi;
                    }
                }
                _ => out.push((lo, hi)),
            }
        }
        IntervalSet { iv: out }
    }

    pub fn interval(lo: BigRational, hi: BigRational) -> Self {
        Self::from_intervals([(lo, hi)])
    }

    pub fn intervals(&self) -> &[(BigRational, BigRational)] {
        &self.iv
    }

    pub fn len(&self) -> usize {
        self.iv.len()
    }

    pub fn is_empty(&self) -> bool {
        self.iv.is_empty()
    }

    pub fn measure(&self) -> BigRational {
        let grid: Option<i128> = self
            .iv
            .iter()
            .map(|(lo, hi)| Some(on_grid(hi)? - on_grid(lo)?))
            .sum();
        match grid {
            Some(k) => BigRational::new(BigInt::from(k), BigInt::one() << GRID_BITS as usize),
            None => self
                .iv
                .iter()
                .fold(BigRational::zero(), |acc, (lo, hi)| acc + (hi - lo)),
        }
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        let i = self.iv.partition_point(|(_, hi)| hi <= x);
        i < self.iv.len() && self.iv[i].0 <= *x
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        let mut v = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.len() || j < other.len() {
            if j == other.len() || (i < self.len() && self.iv[i] <= other.iv[j]) {
                v.push(self.iv[i].clone());
                i += 1;
            } else {
                v.push(other.iv[j].clone());
                j += 1;
            }
        }
        Self::merge_sorted(v)
    }

    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.len() && j < other.len() {
            let (a, b) = (&self.iv[i], &other.iv[j]);
            let lo = if a.0 > b.0 { &a.0 } else { &b.0 };
            let hi = if a.1 < b.1 { &a.1 } else { &b.1 };
            if lo < hi {
                out.push((lo.clone(), hi.clone()));
            }
            if a.1 < b.1 {
                i += 1;
            } else {
                j += 1;
            }
        }
        IntervalSet { iv: out }
    }

    pub fn complement(&self) -> IntervalSet {
        let mut out = Vec::new();
        let mut at = BigRational::zero();
        for (lo, hi) in &self.iv {
            if at < *lo {
                out.push((at, lo.clone()));
            }
            at = hi.clone();
        }
        if at < BigRational::one() {
            out.push((at, BigRational::one()));
        }
        IntervalSet { iv: out }
    }

    pub fn difference(&self, other: &IntervalSet) -> IntervalSet {
        self.intersect(&other.complement())
    }
}

pub fn measure(s: &IntervalSet) -> BigRational {
    s.measure()
}

pub fn intersect(s: &IntervalSet, t: &IntervalSet) -> IntervalSet {
    s.intersect(t)
}

pub fn union(s: &IntervalSet, t: &IntervalSet) -> IntervalSet {
    s.union(t)
}

/// Which numerators `a` may contribute to `E_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Filter {
    None,
    /// `(a, n̂)` must be `(γ, η)`-shift-reduced.
    ShiftReduced(Eta),
}

/// Value of `Ψ(n)`.
#[derive(Clone, Debug, PartialEq)]
pub enum PsiValue {
    Exact(BigRational),
    Enclosed(Enclosure),
    /// Some factor `‖n̂α_i − γ_i‖` vanishes.
    Infinite,
}

impl PsiValue {
    fn bounds(&self) -> Option<(BigRational, BigRational)> {
        match self {
            PsiValue::Exact(r) => Some((r.clone(), r.clone())),
            PsiValue::Enclosed(e) => Some((e.lo().clone(), e.hi().clone())),
            PsiValue::Infinite => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ApproxSetSpec {
    pub n: u64,
    pub hat_n: u64,
    pub gamma: RealSpec,
    pub psi: PsiValue,
    /// Window `I = [lo, hi] ⊆ [0, 1]`.
    pub window: (BigRational, BigRational),
    pub filter: Filter,
}

impl ApproxSetSpec {
    pub fn new(n: u64, gamma: RealSpec, psi: PsiValue) -> Self {
        ApproxSetSpec {
            n,
            hat_n: n,
            gamma,
            psi,
            window: (BigRational::zero(), BigRational::one()),
            filter: Filter::None,
        }
    }

    fn validate(&self) -> Result<()> {
        let (lo, hi) = &self.window;
        if self.n == 0 || self.hat_n == 0 {
            return Err(Error::param("n and hat_n must be positive"));
        }
        if *lo < BigRational::zero() || hi > &BigRational::one() || lo > hi {
            return Err(Error::param("window must be a subinterval of [0, 1]"));
        }
        if let Some((l, _)) = self.psi.bounds() {
            if l.is_negative() {
                return Err(Error::param("Psi must be non-negative"));
            }
        }
        Ok(())
    }
}

/// `E_n` between rational inner and outer approximants; both coincide when
/// `γ` and `Ψ(n)` are rational.
#[derive(Clone, Debug, PartialEq)]
pub struct ApproxSet {
    pub inner: IntervalSet,
    pub outer: IntervalSet,
    /// Number of admissible numerators `a`.
    pub admissible: usize,
}

impl ApproxSet {
    pub fn is_exact(&self) -> bool {
        self.inner == self.outer
    }

    pub fn measure(&self) -> Enclosure {
        Enclosure::new(self.inner.measure(), self.outer.measure())
    }

    fn empty() -> Self {
        ApproxSet {
            inner: IntervalSet::empty(),
            outer: IntervalSet::empty(),
            admissible: 0,
        }
    }
}

/// Endpoint grid for irrational data: `2^-104`, below the `10^-30` per
/// endpoint budget.
pub const GRID_BITS: u32 = 104;

fn grid_round(x: &BigRational, up: bool) -> BigRational {
    BigRational::new(
        numbers::scaled(x, GRID_BITS, up),
        BigInt::one() << GRID_BITS as usize,
    )
}

/// `[⌈x⌉, ⌊y⌋]` for `x = n̂u − γ`, `y = n̂v − γ`, decided by refining `γ`.
fn numerator_range(spec: &ApproxSetSpec, budget: &Budget) -> Result<(BigInt, BigInt)> {
    let h = numbers::int(spec.hat_n);
    let (u, v) = (&spec.window.0 * &h, &spec.window.1 * &h);
    if let Some(g) = spec.gamma.as_rational() {
        return Ok((numbers::ceil(&(u - &g)), numbers::floor(&(v - g))));
    }
    resolve::resolve(budget, |w| {
        let g = spec.gamma.enclose(w)?;
        let (lo_a, lo_b) = (numbers::ceil(&(&u - g.hi())), numbers::ceil(&(&u - g.lo())));
        let (hi_a, hi_b) = (
            numbers::floor(&(&v - g.hi())),
            numbers::floor(&(&v - g.lo())),
        );
        Ok((lo_a == lo_b && hi_a == hi_b).then_some((lo_a, hi_a)))
    })
}

pub fn build_approx_set(spec: &ApproxSetSpec) -> Result<ApproxSet> {
    let mut anchors = match spec.filter {
        Filter::None => None,
        Filter::ShiftReduced(_) => Some(Anchors::new(&spec.gamma)?),
    };
    build_approx_set_with(spec, anchors.as_mut(), &Budget::default())
}

/// As [`build_approx_set`], reusing the convergents of `γ`.
pub fn build_approx_set_with(
    spec: &ApproxSetSpec,
    anchors: Option<&mut Anchors>,
    budget: &Budget,
) -> Result<ApproxSet> {
    spec.validate()?;
    if spec.psi == PsiValue::Exact(BigRational::zero()) {
        return Ok(ApproxSet::empty());
    }
    let (a_lo, a_hi) = numerator_range(spec, budget)?;
    if a_lo > a_hi {
        return Ok(ApproxSet::empty());
    }
    let count = (&a_hi - &a_lo + 1u32)
        .to_u64()
        .filter(|&c| c <= 50_000_000)
        .ok_or_else(|| Error::budget("too many numerators"))?;
    let anchor = match (spec.filter, anchors) {
        (Filter::ShiftReduced(eta), Some(an)) => Some(an.anchor(eta, spec.hat_n)?),
        (Filter::ShiftReduced(eta), None) => {
            Some(Anchors::new(&spec.gamma)?.anchor(eta, spec.hat_n)?)
        }
        (Filter::None, _) => None,
    };
    let numerators: Vec<BigInt> = (0..count)
        .map(|i| &a_lo + BigInt::from(i))
        .filter(|a| {
            anchor.as_ref().is_none_or(|an| {
                an.is_reduced(a.mod_floor(&BigInt::from(spec.hat_n)).to_i64().unwrap_or(0))
            })
        })
        .collect();
    let admissible = numerators.len();
    let Some((psi_lo, psi_hi)) = spec.psi.bounds() else {
        let s = if admissible > 0 {
            IntervalSet::unit()
        } else {
            IntervalSet::empty()
        };
        return Ok(ApproxSet {
            inner: s.clone(),
            outer: s,
            admissible,
        });
    };
    let h = numbers::int(spec.hat_n);
    let exact = spec.gamma.as_rational().filter(|_| psi_lo == psi_hi);
    if let Some(g) = exact {
        let s = IntervalSet::from_intervals(numerators.iter().map(|a| {
            let c = numbers::int(a.clone()) + &g;
            ((&c - &psi_lo) / &h, (&c + &psi_lo) / &h)
        }));
        return Ok(ApproxSet {
            inner: s.clone(),
            outer: s,
            admissible,
        });
    }
    let w = BigRational::new(BigInt::one(), BigInt::from(10u32).pow(31) * spec.hat_n);
    let g = spec.gamma.enclose(&w)?;
    if let Some(sets) = grid_sets(&numerators, spec.hat_n, &g, &psi_lo, &psi_hi) {
        let (inner, outer) = sets;
        return Ok(ApproxSet {
            inner,
            outer,
            admissible,
        });
    }
    let build = |outer: bool| {
        let (p, glo, ghi) = if outer {
            (&psi_hi, g.lo(), g.hi())
        } else {
            (&psi_lo, g.hi(), g.lo())
        };
        IntervalSet::from_intervals(numerators.iter().map(|a| {
            let a = numbers::int(a.clone());
            let lo = (&a + glo - p) / &h;
            let hi = (&a + ghi + p) / &h;
            (grid_round(&lo, !outer), grid_round(&hi, outer))
        }))
    };
    Ok(ApproxSet {
        inner: build(false),
        outer: build(true),
        admissible,
    })
}

/// `k 2^-GRID_BITS` in lowest terms.
fn grid_value(k: i128) -> BigRational {
    if k == 0 {
        return BigRational::zero();
    }
    let tz = k.trailing_zeros().min(GRID_BITS);
    BigRational::new_raw(
        BigInt::from(k >> tz),
        BigInt::one() << (GRID_BITS - tz) as usize,
    )
}

/// Inner and outer sets computed in `i128` on the `2^-GRID_BITS` grid, when
/// every quantity fits.
fn grid_sets(
    numerators: &[BigInt],
    hat_n: u64,
    g: &Enclosure,
    psi_lo: &BigRational,
    psi_hi: &BigRational,
) -> Option<(IntervalSet, IntervalSet)> {
    const LIMIT: i128 = 1 << 22;
    let sc = |x: &BigRational, up: bool| {
        numbers::scaled(x, GRID_BITS, up)
            .to_i128()
            .filter(|v| v.abs() < LIMIT << GRID_BITS)
    };
    let (gl_d, gh_u) = (sc(g.lo(), false)?, sc(g.hi(), true)?);
    let (pl_d, ph_u) = (sc(psi_lo, false)?, sc(psi_hi, true)?);
    let h = i128::from(hat_n);
    if h >= LIMIT {
        return None;
    }
    let nums: Vec<i128> = numerators
        .iter()
        .map(|a| a.to_i128().filter(|v| v.abs() < LIMIT))
        .collect::<Option<_>>()?;
    let one = 1i128 << GRID_BITS;
    let clip = |x: i128| x.clamp(0, one);
    let floor = |x: i128| Integer::div_floor(&x, &h);
    let ceil = |x: i128| -floor(-x);
    let mut inner = Vec::with_capacity(nums.len());
    let mut outer = Vec::with_capacity(nums.len());
    for a in nums {
        let base = a << GRID_BITS;
        let (lo, hi) = (
            clip(ceil(base + gh_u - pl_d)),
            clip(floor(base + gl_d + pl_d)),
        );
        if lo < hi {
            inner.push((lo, hi));
        }
        let (lo, hi) = (
            clip(floor(base + gl_d - ph_u)),
            clip(ceil(base + gh_u + ph_u)),
        );
        if lo < hi {
            outer.push((lo, hi));
        }
    }
    Some((grid_set(inner), grid_set(outer)))
}

fn grid_set(mut v: Vec<(i128, i128)>) -> IntervalSet {
    v.sort_unstable();
    let mut merged: Vec<(i128, i128)> = Vec::with_capacity(v.len());
    for (lo, hi) in v {
        match merged.last_mut() {
            Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
            _ => merged.push((lo, hi)),
        }
    }
    IntervalSet {
        iv: merged
            .into_iter()
            .map(|(lo, hi)| (grid_value(lo), grid_value(hi)))
            .collect(),
    }
}

/// A sequence of approximation sets `E_1, E_2, ...` with
/// `Ψ(n) = ψ(n̂) / Π ‖n̂α_i − γ_i‖`.
pub struct Family<'a> {
    pub alphas: Vec<RealSpec>,
    pub gammas: Vec<RealSpec>,
    /// The shift in `|n̂α − γ − a| < Ψ(n)`.
    pub gamma: RealSpec,
    pub window: (BigRational, BigRational),
    pub filter: Filter,
    pub hat: &'a dyn Fn(u64) -> u64,
    /// `ψ` evaluated at `n̂`.
    pub psi: &'a dyn Fn(u64) -> Result<Enclosure>,
}

impl<'a> Family<'a> {
    /// `k` in `(log n)^{k-1}`.
    pub fn k(&self) -> usize {
        self.alphas.len() + 1
    }

    fn distances(&self) -> Result<Vec<OrbitDistance>> {
        self.alphas
            .iter()
            .zip(&self.gammas)
            .map(|(a, g)| OrbitDistance::new(a.clone(), g.clone()))
            .collect()
    }

    pub fn big_psi(&self, n: u64) -> Result<PsiValue> {
        self.big_psi_with(n, &self.distances()?)
    }

    fn big_psi_with(&self, n: u64, dist: &[OrbitDistance]) -> Result<PsiValue> {
        let h = (self.hat)(n);
        let psi = (self.psi)(h)?;
        let hb = BigInt::from(h);
        let mut denom = Enclosure::point(BigRational::one());
        for d in dist {
            if h <= i64::MAX as u64 && d.is_zero(h as i64) {
                return Ok(PsiValue::Infinite);
            }
            let f = resolve::resolve(&Budget::default(), |w| {
                let w = w.min(&numbers::pow2_inv(128)).clone();
                let e = d.enclose(&hb, &w)?;
                Ok((!e.contains_zero()).then_some(e))
            })?;
            denom = &denom * &f;
        }
        let r = denom
            .recip()
            .ok_or_else(|| Error::undecidable("a factor of Psi could not be separated from 0"))?;
        let v = &psi * &r;
        Ok(if v.is_point() {
            PsiValue::Exact(v.lo().clone())
        } else {
            PsiValue::Enclosed(v)
        })
    }

    pub fn spec(&self, n: u64, psi: PsiValue) -> ApproxSetSpec {
        ApproxSetSpec {
            n,
            hat_n: (self.hat)(n),
            gamma: self.gamma.clone(),
            psi,
            window: self.window.clone(),
            filter: self.filter,
        }
    }

    /// `E_n` for `n = 1..=x`, with the `Ψ(n)` used.
    pub fn sets(&self, x: u64) -> Result<Vec<(ApproxSet, PsiValue)>> {
        self.sets_in(1, x)
    }

    pub fn sets_in(&self, from: u64, to: u64) -> Result<Vec<(ApproxSet, PsiValue)>> {
        let dist = self.distances()?;
        let mut anchors = Anchors::new(&self.gamma)?;
        let budget = Budget::default();
        (from..=to)
            .map(|n| {
                let psi = self.big_psi_with(n, &dist)?;
                let set =
                    build_approx_set_with(&self.spec(n, psi.clone()), Some(&mut anchors), &budget)?;
                Ok((set, psi))
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DivergenceReport {
    /// `Σ μ(E_n)`.
    pub sum_measure: Enclosure,
    /// `μ(I) Σ ψ(n̂)(log n)^{k-1}`.
    pub sum_main: Enclosure,
    /// `None` when the main sum is zero.
    pub ratio: Option<Enclosure>,
}

pub fn divergence_sum(family: &Family, sets: &[(ApproxSet, PsiValue)]) -> Result<DivergenceReport> {
    let mut sm = Enclosure::zero();
    let mut main = Enclosure::zero();
    let k = family.k() as u32;
    let mu_i = &family.window.1 - &family.window.0;
    for (i, (set, _)) in sets.iter().enumerate() {
        let n = i as u64 + 1;
        sm = &sm + &set.measure();
        let psi = (family.psi)((family.hat)(n))?;
        let lg = log::max_log_enclosure(&numbers::int(n))?;
        let mut term = psi;
        for _ in 1..k {
            term = &term * &lg;
        }
        main = (&main + &term.scale(&mu_i)).round_outward(256);
        sm = sm.round_outward(256);
    }
    let ratio =
        (main.lo().is_positive()).then(|| Enclosure::new(sm.lo() / main.hi(), sm.hi() / main.lo()));
    Ok(DivergenceReport {
        sum_measure: sm,
        sum_main: main,
        ratio,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct OverlapReport {
    /// `Σ_n μ(E_n)`.
    pub sum_measure: Enclosure,
    /// `Σ_{m,n} μ(E_n ∩ E_m)`, diagonal included.
    pub sum_overlap: Enclosure,
    /// `(Σ μ(E_n))² / Σ_{m,n} μ(E_n ∩ E_m)`; `None` if every set is null.
    pub bc_ratio: Option<Enclosure>,
}

/// Largest number of sets accepted by [`overlap_matrix_sum`].
pub const OVERLAP_BUDGET: usize = 3000;

pub fn overlap_matrix_sum(sets: &[ApproxSet]) -> Result<OverlapReport> {
    if sets.len() > OVERLAP_BUDGET {
        return Err(Error::budget(format!(
            "{} sets exceed the pair budget",
            sets.len()
        )));
    }
    let inner: Vec<&IntervalSet> = sets.iter().map(|s| &s.inner).collect();
    let outer: Vec<&IntervalSet> = sets.iter().map(|s| &s.outer).collect();
    let (m_lo, o_lo) = pair_sums(&inner);
    let (m_hi, o_hi) = pair_sums(&outer);
    let sum_measure = Enclosure::new(m_lo, m_hi);
    let sum_overlap = Enclosure::new(o_lo, o_hi);
    let bc_ratio = sum_overlap.lo().is_positive().then(|| {
        let sq = |x: &BigRational| x * x;
        Enclosure::new(
            sq(sum_measure.lo()) / sum_overlap.hi(),
            sq(sum_measure.hi()) / sum_overlap.lo(),
        )
    });
    Ok(OverlapReport {
        sum_measure,
        sum_overlap,
        bc_ratio,
    })
}

/// Endpoint as an integer multiple of `2^-GRID_BITS`, if it is one.
fn on_grid(x: &BigRational) -> Option<i128> {
    let d = x.denom();
    if d.magnitude().count_ones() != 1 || d.bits() > GRID_BITS as u64 + 1 {
        return None;
    }
    let shift = GRID_BITS as u64 + 1 - d.bits();
    (x.numer() << shift as usize).to_i128()
}

/// `(Σ μ(S_n), Σ_{m,n} μ(S_n ∩ S_m))` by a sweep over all intervals.
fn pair_sums(sets: &[&IntervalSet]) -> (BigRational, BigRational) {
    let diag = sets
        .iter()
        .fold(BigRational::zero(), |acc, s| acc + s.measure());
    let all_grid: Option<Vec<(i128, i128)>> = sets
        .iter()
        .flat_map(|s| s.iv.iter())
        .map(|(lo, hi)| Some((on_grid(lo)?, on_grid(hi)?)))
        .collect();
    let off = match all_grid {
        Some(mut v) => {
            v.sort_unstable();
            let mut acc = BigInt::zero();
            let mut part: i128 = 0;
            sweep(&v, |hi, lo| {
                let d = hi - lo;
                match part.checked_add(d) {
                    Some(p) => part = p,
                    None => {
                        acc += part;
                        part = d;
                    }
                }
            });
            acc += part;
            BigRational::new(acc, BigInt::one() << GRID_BITS as usize)
        }
        None => {
            let mut v: Vec<(BigRational, BigRational)> =
                sets.iter().flat_map(|s| s.iv.iter().cloned()).collect();
            v.sort();
            let mut acc = BigRational::zero();
            sweep(&v, |hi, lo| acc += hi - lo);
            acc
        }
    };
    let two = numbers::int(2);
    (diag.clone(), diag + off * two)
}

/// Calls `f(min(hi_i, hi_j), lo_j)` for each overlapping pair `i < j` of
/// intervals sorted by lower end. Intervals of one set never overlap, so
/// every such pair comes from two different sets.
fn sweep<T: Ord + Clone>(v: &[(T, T)], mut f: impl FnMut(&T, &T)) {
    let mut active: Vec<&(T, T)> = Vec::new();
    for cur in v {
        active.retain(|a| a.1 > cur.0);
        for a in &active {
            let hi = if a.1 < cur.1 { &a.1 } else { &cur.1 };
            f(hi, &cur.0);
        }
        active.push(cur);
    }
}

/// `min_J μ(S ∩ J)/μ(J)` over the cells `J = [i/g, (i+1)/g)`.
pub fn density_profile(s: &IntervalSet, g: u64) -> Result<BigRational> {
    if g == 0 {
        return Err(Error::param("grid size must be >= 1"));
    }
    let gi = numbers::int(g);
    let mut min: Option<BigRational> = None;
    for i in 0..g {
        let cell = IntervalSet::interval(
            numbers::ratio(i as i64, g as i64),
            numbers::ratio(i as i64 + 1, g as i64),
        );
        let d = s.intersect(&cell).measure() * &gi;
        if min.as_ref().is_none_or(|m| d < *m) {
            min = Some(d);
        }
    }
    Ok(min.unwrap_or_else(BigRational::zero))
}

/// `μ(E_n) <= c μ(I) Ψ(n)`, certified from the outer set and the lower
/// end of `Ψ`.
pub fn measure_bound_holds(
    set: &ApproxSet,
    psi: &PsiValue,
    window: &(BigRational, BigRational),
    c: u64,
) -> bool {
    match psi.bounds() {
        Some((lo, _)) => set.outer.measure() <= lo * (&window.1 - &window.0) * numbers::int(c),
        None => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::{ratio, QuadraticSurd};
    use proptest::prelude::*;

    fn example() -> IntervalSet {
        let mut s = ApproxSetSpec::new(2, RealSpec::zero(), PsiValue::Exact(ratio(1, 8)));
        s.hat_n = 2;
        build_approx_set(&s).unwrap().inner
    }

    #[test]
    fn basic_measures() {
        assert_eq!(IntervalSet::empty().measure(), ratio(0, 1));
        assert_eq!(IntervalSet::unit().measure(), ratio(1, 1));
        let s = ApproxSetSpec::new(5, RealSpec::zero(), PsiValue::Exact(ratio(0, 1)));
        assert!(build_approx_set(&s).unwrap().inner.is_empty());
    }

    #[test]
    fn hat_two_example() {
        let e = example();
        assert_eq!(
            e.intervals(),
            &[
                (ratio(0, 1), ratio(1, 16)),
                (ratio(7, 16), ratio(9, 16)),
                (ratio(15, 16), ratio(1, 1))
            ]
        );
        assert_eq!(e.measure(), ratio(1, 4));
        let half = IntervalSet::interval(ratio(0, 1), ratio(1, 2));
        assert_eq!(e.intersect(&half).measure(), ratio(1, 8));
        assert_eq!(density_profile(&e, 4).unwrap(), ratio(1, 4));
        assert_eq!(
            density_profile(&IntervalSet::unit(), 7).unwrap(),
            ratio(1, 1)
        );
        assert_eq!(
            density_profile(&IntervalSet::empty(), 3).unwrap(),
            ratio(0, 1)
        );
    }

    #[test]
    fn zero_shift_filter_keeps_coprime() {
        let mut s = ApproxSetSpec::new(12, RealSpec::zero(), PsiValue::Exact(ratio(1, 100)));
        s.filter = Filter::ShiftReduced(Eta::new(1, 2).unwrap());
        let e = build_approx_set(&s).unwrap();
        assert_eq!(e.admissible, 4);
        let centres: Vec<BigRational> = e
            .inner
            .intervals()
            .iter()
            .map(|(l, h)| (l + h) / numbers::int(2))
            .collect();
        assert_eq!(centres, [1, 5, 7, 11].map(|a| ratio(a, 12)).to_vec());
    }

    #[test]
    fn large_psi_merges() {
        let s = ApproxSetSpec::new(3, RealSpec::rational(1, 5), PsiValue::Exact(ratio(3, 2)));
        let e = build_approx_set(&s).unwrap();
        assert_eq!(e.inner, IntervalSet::unit());
        let mut w = s.clone();
        w.window = (ratio(0, 1), ratio(1, 3));
        let e = build_approx_set(&w).unwrap();
        assert!(e.inner.measure() <= ratio(1, 1));
    }

    #[test]
    fn irrational_shift_brackets() {
        let g = RealSpec::Surd(QuadraticSurd::sqrt(2).unwrap()).minus_integer(&BigInt::one());
        let s = ApproxSetSpec::new(7, g, PsiValue::Exact(ratio(1, 30)));
        let e = build_approx_set(&s).unwrap();
        let m = e.measure();
        assert!(e.inner.measure() <= e.outer.measure());
        assert!(m.width() < ratio(1, 1_000_000_000));
        // seven unclipped intervals of length 2/210
        assert!(m.contains(&ratio(14, 210)));
    }

    #[test]
    fn overlap_examples() {
        let single = ApproxSet {
            inner: example(),
            outer: example(),
            admissible: 3,
        };
        // a single set gives μ²/μ = μ
        let r = overlap_matrix_sum(core::slice::from_ref(&single)).unwrap();
        assert_eq!(r.bc_ratio.unwrap(), Enclosure::point(ratio(1, 4)));
        let full = ApproxSet {
            inner: IntervalSet::unit(),
            outer: IntervalSet::unit(),
            admissible: 1,
        };
        assert_eq!(
            overlap_matrix_sum(&[full]).unwrap().bc_ratio.unwrap(),
            Enclosure::point(ratio(1, 1))
        );
        let a = IntervalSet::interval(ratio(0, 1), ratio(1, 4));
        let b = IntervalSet::interval(ratio(1, 2), ratio(3, 4));
        let sets: Vec<ApproxSet> = [a, b]
            .into_iter()
            .map(|s| ApproxSet {
                inner: s.clone(),
                outer: s,
                admissible: 1,
            })
            .collect();
        let r = overlap_matrix_sum(&sets).unwrap();
        assert_eq!(r.sum_overlap, Enclosure::point(ratio(1, 2)));
        assert_eq!(r.bc_ratio.unwrap(), Enclosure::point(ratio(1, 2)));
        let dup = overlap_matrix_sum(&[single.clone(), single]).unwrap();
        assert_eq!(dup.bc_ratio.unwrap(), Enclosure::point(ratio(1, 4)));
    }

    #[test]
    fn overlap_grid_and_rational_paths_agree() {
        let mk = |n: u64, g: RealSpec| {
            build_approx_set(&ApproxSetSpec::new(n, g, PsiValue::Exact(ratio(1, 5)))).unwrap()
        };
        let sqrt = RealSpec::Surd(QuadraticSurd::sqrt(3).unwrap());
        let grid: Vec<ApproxSet> = (1..12).map(|n| mk(n, sqrt.clone())).collect();
        let r = overlap_matrix_sum(&grid).unwrap();
        let mut brute = BigRational::zero();
        for a in &grid {
            for b in &grid {
                brute += a.inner.intersect(&b.inner).measure();
            }
        }
        assert_eq!(*r.sum_overlap.lo(), brute);
        let rat: Vec<ApproxSet> = (1..12).map(|n| mk(n, RealSpec::rational(1, 3))).collect();
        let r = overlap_matrix_sum(&rat).unwrap();
        let mut brute = BigRational::zero();
        for a in &rat {
            for b in &rat {
                brute += a.inner.intersect(&b.inner).measure();
            }
        }
        assert_eq!(*r.sum_overlap.lo(), brute);
    }

    #[test]
    fn divergence_below_first_nonempty() {
        let psi = |_: u64| Ok(Enclosure::point(ratio(1, 10)));
        let hat = |n: u64| n;
        let f = Family {
            alphas: Vec::new(),
            gammas: Vec::new(),
            gamma: RealSpec::zero(),
            window: (ratio(1, 3), ratio(2, 5)),
            filter: Filter::None,
            hat: &hat,
            psi: &psi,
        };
        // n = 1, 2 have no a with a/n in [1/3, 2/5]
        let sets = f.sets(2).unwrap();
        let r = divergence_sum(&f, &sets).unwrap();
        assert!(r.sum_measure.is_point() && r.sum_measure.lo().is_zero());
        assert!(r.sum_main.lo().is_positive());
        assert!(r.ratio.unwrap().lo().is_zero());
    }

    fn arb_set() -> impl Strategy<Value = IntervalSet> {
        proptest::collection::vec((0i64..64, 0i64..64), 0..6).prop_map(|v| {
            IntervalSet::from_intervals(
                v.into_iter()
                    .map(|(a, b)| (ratio(a.min(b), 64), ratio(a.max(b), 64))),
            )
        })
    }

    proptest! {
        #[test]
        fn inclusion_exclusion(s in arb_set(), t in arb_set()) {
            prop_assert_eq!(s.union(&t).measure() + s.intersect(&t).measure(), s.measure() + t.measure());
            let i = s.intersect(&t).measure();
            prop_assert!(i <= s.measure() && i <= t.measure());
            prop_assert_eq!(s.difference(&t).measure(), s.measure() - s.intersect(&t).measure());
            prop_assert_eq!(s.complement().measure(), BigRational::one() - s.measure());
        }

        #[test]
        fn small_psi_gives_disjoint_intervals(n in 1u64..60, num in 0i64..40, d in 1i64..40) {
            let psi = ratio(1, 2 * n as i64 + 1);
            let s = ApproxSetSpec::new(n, RealSpec::rational(num, d), PsiValue::Exact(psi.clone()));
            let e = build_approx_set(&s).unwrap();
            let len = &psi * numbers::int(2) / numbers::int(n);
            let inside = e.inner.intervals().iter().filter(|(l, h)| h - l == len).count();
            let clipped = e.inner.len() - inside;
            prop_assert!(clipped <= 2);
            prop_assert!(e.inner.len() == e.admissible || e.inner.len() + 1 == e.admissible);
        }
    }
}
