//! Bohr sets `{|n| <= N : ‖nα_i − γ_i‖ <= ρ_i}`, generalised arithmetic
//! progressions, the congruence lattice `A·n ≡ 0 (mod d)` and lattice point
//! counts in boxes.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::contfrac::convergents;
use crate::error::{Error, Result};
use crate::numbers::{self, BigRational, Budget, OrbitDistance, RealSpec};

/// Limit on the number of digit vectors or lattice points enumerated.
pub const ENUMERATION_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug)]
pub struct BohrParams {
    pub alpha: Vec<RealSpec>,
    pub gamma: Vec<RealSpec>,
    pub n: u64,
    pub rho: Vec<BigRational>,
}

impl BohrParams {
    pub fn new(
        alpha: Vec<RealSpec>,
        gamma: Vec<RealSpec>,
        n: u64,
        rho: Vec<BigRational>,
    ) -> Result<Self> {
        if alpha.len() != gamma.len() || alpha.len() != rho.len() {
            return Err(Error::param("alpha, gamma and rho must have equal lengths"));
        }
        if rho
            .iter()
            .any(|r| *r <= BigRational::zero() || *r > BigRational::one())
        {
            return Err(Error::param("each rho must lie in (0, 1]"));
        }
        if n > i64::MAX as u64 / 2 {
            return Err(Error::param("N too large"));
        }
        Ok(BohrParams {
            alpha,
            gamma,
            n,
            rho,
        })
    }

    /// The single-frequency set with `γ = 0`.
    pub fn homogeneous(alpha: RealSpec, n: u64, rho: BigRational) -> Result<Self> {
        Self::new(vec![alpha], vec![RealSpec::zero()], n, vec![rho])
    }

    fn distances(&self) -> Result<Vec<OrbitDistance>> {
        self.alpha
            .iter()
            .zip(&self.gamma)
            .map(|(a, g)| OrbitDistance::new(a.clone(), g.clone()))
            .collect()
    }
}

/// Members of the Bohr set with `lo <= n <= hi` (clipped to `|n| <= N`).
/// Boundary ties `‖nα − γ‖ = ρ` count as inside.
pub fn bohr_members_in(p: &BohrParams, lo: i64, hi: i64, budget: &Budget) -> Result<Vec<i64>> {
    let dist = p.distances()?;
    let n = p.n as i64;
    let mut out = Vec::new();
    let mut stuck = Vec::new();
    'outer: for m in lo.max(-n)..=hi.min(n) {
        for (d, rho) in dist.iter().zip(&p.rho) {
            match d.cmp(m, rho, budget) {
                Ok(Ordering::Greater) => continue 'outer,
                Ok(_) => {}
                Err(Error::Undecidable { .. }) => {
                    stuck.push(m);
                    continue 'outer;
                }
                Err(e) => return Err(e),
            }
        }
        out.push(m);
    }
    if !stuck.is_empty() {
        let shown: Vec<String> = stuck.iter().take(10).map(|m| format!("{m}")).collect();
        return Err(Error::undecidable(format!(
            "Bohr membership for n in [{}]",
            shown.join(", ")
        )));
    }
    Ok(out)
}

pub fn enumerate_bohr(p: &BohrParams, budget: &Budget) -> Result<Vec<i64>> {
    if 2 * p.n + 1 > ENUMERATION_BUDGET * 10 {
        return Err(Error::budget(format!("N = {} too large to enumerate", p.n)));
    }
    bohr_members_in(p, -(p.n as i64), p.n as i64, budget)
}

/// Localised Bohr set: the `n >= 1` whose image `ĥ = hat(n)` satisfies
/// `hat(N) < ĥ <= hat(CN)` and `ρ_i < ‖ĥα_i − γ_i‖ <= Cρ_i`.
pub fn enumerate_localised_bohr(
    alpha: &[RealSpec],
    gamma: &[RealSpec],
    n: u64,
    c: u64,
    rho: &[BigRational],
    hat: &dyn Fn(u64) -> u64,
    budget: &Budget,
) -> Result<Vec<u64>> {
    if alpha.len() != gamma.len() || alpha.len() != rho.len() || c < 2 {
        return Err(Error::param("mismatched lengths or C < 2"));
    }
    let dist: Vec<OrbitDistance> = alpha
        .iter()
        .zip(gamma)
        .map(|(a, g)| OrbitDistance::new(a.clone(), g.clone()))
        .collect::<Result<_>>()?;
    let (lo, hi) = (hat(n), hat(c * n));
    let cb = numbers::int(c);
    let mut out = Vec::new();
    'outer: for m in 1..=c * n {
        let h = hat(m);
        if h <= lo || h > hi {
            continue;
        }
        let h = i64::try_from(h).map_err(|_| Error::param("hat(n) overflows"))?;
        for (d, r) in dist.iter().zip(rho) {
            if d.cmp(h, r, budget)? != Ordering::Greater
                || d.cmp(h, &(r * &cb), budget)? == Ordering::Greater
            {
                continue 'outer;
            }
        }
        out.push(m);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CardinalityReport {
    pub count: u64,
    /// `δN − 1`.
    pub lower: BigRational,
    /// `32δN`.
    pub upper: BigRational,
    pub hypothesis_met: bool,
    /// The denominator `q_ℓ` witnessing the hypothesis.
    pub witness: Option<BigInt>,
}

impl CardinalityReport {
    pub fn bounds_hold(&self) -> bool {
        let c = numbers::int(self.count);
        self.lower <= c && c <= self.upper
    }
}

/// Counts `B_α^0(N; δ)` and checks `δN − 1 <= # <= 32δN` when some
/// convergent denominator lies in `[1/(2δ), N]`.
pub fn bohr_cardinality_check(
    alpha: &RealSpec,
    delta: &BigRational,
    n: u64,
    budget: &Budget,
) -> Result<CardinalityReport> {
    if alpha.is_rational() {
        return Err(Error::param("alpha must be irrational"));
    }
    let cf = alpha.continued_fraction();
    let t = convergents(&cf, 2)?;
    let od2 = OrbitDistance::new(alpha.clone(), RealSpec::zero())?;
    let q2 = t.q[2]
        .to_i64()
        .ok_or_else(|| Error::param("q_2 too large"))?;
    if *delta <= BigRational::zero()
        || od2.cmp(q2, &(delta * numbers::int(2)), budget)? != Ordering::Greater
    {
        return Err(Error::param("delta must lie in (0, ‖q_2 α‖/2)"));
    }
    let floor_q = numbers::ceil(&(numbers::int(1) / (delta * numbers::int(2))));
    let nb = BigInt::from(n);
    let mut witness = None;
    let mut j = 0;
    loop {
        let t = convergents(&cf, j)?;
        let q = &t.q[j];
        if *q > nb {
            break;
        }
        if *q >= floor_q {
            witness = Some(q.clone());
            break;
        }
        j += 1;
    }
    let p = BohrParams::homogeneous(alpha.clone(), n, delta.clone())?;
    let count = enumerate_bohr(&p, budget)?.len() as u64;
    let dn = delta * numbers::int(n);
    Ok(CardinalityReport {
        count,
        lower: &dn - BigRational::one(),
        upper: dn * numbers::int(32),
        hypothesis_met: witness.is_some(),
        witness,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GapShape {
    /// `|n_i| <= N_i`.
    Symmetric,
    /// `1 <= n_i <= N_i`.
    ProperAsymmetric,
}

/// `{b + A_1 n_1 + ... + A_k n_k}` over a box of digit vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gap {
    pub b: i64,
    pub a: Vec<i64>,
    pub n: Vec<u64>,
    pub shape: GapShape,
}

impl Gap {
    pub fn new(b: i64, a: Vec<i64>, n: Vec<u64>, shape: GapShape) -> Result<Self> {
        if a.is_empty() || a.len() != n.len() {
            return Err(Error::param("A and N must be non-empty with equal lengths"));
        }
        if a.iter().any(|&x| x <= 0) {
            return Err(Error::param("each A_i must be positive"));
        }
        if n.contains(&0) {
            return Err(Error::param("each N_i must be positive"));
        }
        Ok(Gap { b, a, n, shape })
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    fn ranges(&self) -> Vec<(i64, i64)> {
        self.n
            .iter()
            .map(|&n| match self.shape {
                GapShape::Symmetric => (-(n as i64), n as i64),
                GapShape::ProperAsymmetric => (1, n as i64),
            })
            .collect()
    }

    /// Number of digit vectors.
    pub fn size(&self) -> Option<u64> {
        self.ranges()
            .iter()
            .try_fold(1u64, |acc, &(lo, hi)| acc.checked_mul((hi - lo + 1) as u64))
    }

    fn check_budget(&self) -> Result<u64> {
        match self.size() {
            Some(s) if s <= ENUMERATION_BUDGET => Ok(s),
            _ => Err(Error::budget("GAP has more than 10^7 digit vectors")),
        }
    }

    /// Calls `f` on every member, one per digit vector.
    pub fn for_each(&self, mut f: impl FnMut(i64)) -> Result<()> {
        self.check_budget()?;
        let r = self.ranges();
        let k = r.len();
        let mut digits: Vec<i64> = r.iter().map(|x| x.0).collect();
        let mut value = self.b;
        for (a, d) in self.a.iter().zip(&digits) {
            value = a
                .checked_mul(*d)
                .and_then(|x| value.checked_add(x))
                .ok_or_else(|| Error::param("GAP member overflows i64"))?;
        }
        let max = r
            .iter()
            .zip(&self.a)
            .try_fold(self.b.unsigned_abs(), |acc, (&(lo, hi), &a)| {
                (a.unsigned_abs())
                    .checked_mul(lo.unsigned_abs().max(hi.unsigned_abs()))
                    .and_then(|x| acc.checked_add(x))
            });
        if max.is_none_or(|m| m > i64::MAX as u64) {
            return Err(Error::param("GAP member overflows i64"));
        }
        loop {
            f(value);
            let mut i = 0;
            loop {
                if i == k {
                    return Ok(());
                }
                if digits[i] < r[i].1 {
                    digits[i] += 1;
                    value += self.a[i];
                    break;
                }
                value -= self.a[i] * (digits[i] - r[i].0);
                digits[i] = r[i].0;
                i += 1;
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapEnumeration {
    /// Sorted, with multiplicity.
    pub members: Vec<i64>,
    pub proper: bool,
    /// Up to ten values hit by more than one digit vector.
    pub collisions: Vec<i64>,
}

impl GapEnumeration {
    pub fn distinct(&self) -> Vec<i64> {
        let mut v = self.members.clone();
        v.dedup();
        v
    }
}

pub fn enumerate_gap(g: &Gap) -> Result<GapEnumeration> {
    let mut members = Vec::with_capacity(g.check_budget()? as usize);
    g.for_each(|m| members.push(m))?;
    members.sort_unstable();
    let mut collisions = Vec::new();
    for w in members.windows(2) {
        if w[0] == w[1] && collisions.last() != Some(&w[0]) {
            collisions.push(w[0]);
            if collisions.len() == 10 {
                break;
            }
        }
    }
    Ok(GapEnumeration {
        proper: collisions.is_empty(),
        members,
        collisions,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    GapInBohr,
    BohrInGap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Containment {
    pub holds: bool,
    /// Up to ten witnesses against inclusion.
    pub counterexamples: Vec<i64>,
}

pub fn verify_containment(
    bohr: &BohrParams,
    g: &Gap,
    direction: Direction,
    budget: &Budget,
) -> Result<Containment> {
    let gap_members: BTreeSet<i64> = enumerate_gap(g)?.members.into_iter().collect();
    let mut bad = Vec::new();
    match direction {
        Direction::BohrInGap => {
            for m in enumerate_bohr(bohr, budget)? {
                if !gap_members.contains(&m) {
                    bad.push(m);
                }
            }
        }
        Direction::GapInBohr => {
            let dist = bohr.distances()?;
            for &m in &gap_members {
                let inside = m.unsigned_abs() <= bohr.n
                    && dist.iter().zip(&bohr.rho).try_fold(true, |ok, (d, r)| {
                        Ok::<_, Error>(ok && d.cmp(m, r, budget)? != Ordering::Greater)
                    })?;
                if !inside {
                    bad.push(m);
                }
            }
        }
    }
    bad.truncate(10);
    Ok(Containment {
        holds: bad.is_empty(),
        counterexamples: bad,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisibilityCount {
    pub count: u64,
    /// `N_1 ⋯ N_k / d`.
    pub main_term: BigRational,
    /// `|count − main_term|`.
    pub defect: BigRational,
    /// `N_1 ⋯ N_k / min N_i`.
    pub scale: BigRational,
}

impl DivisibilityCount {
    /// `defect <= c · scale`.
    pub fn within(&self, c: u64) -> bool {
        self.defect <= &self.scale * numbers::int(c)
    }
}

/// Members of a proper asymmetric GAP divisible by `d`, counted exactly.
pub fn count_divisible_in_gap(g: &Gap, d: u64) -> Result<DivisibilityCount> {
    if d == 0 {
        return Err(Error::param("d must be positive"));
    }
    if g.shape != GapShape::ProperAsymmetric {
        return Err(Error::param("GAP must be asymmetric"));
    }
    if g.a.iter().fold(0i64, |acc, &x| acc.gcd(&x)) != 1 {
        return Err(Error::param("gcd(A_1, ..., A_k) must be 1"));
    }
    if !enumerate_gap(g)?.proper {
        return Err(Error::param("GAP is not proper"));
    }
    let d = d as i64;
    let mut count = 0u64;
    g.for_each(|m| {
        if m.rem_euclid(d) == 0 {
            count += 1;
        }
    })?;
    let prod = g.n.iter().fold(BigInt::one(), |acc, &x| acc * x);
    let min = *g.n.iter().min().expect("non-empty");
    let main_term = BigRational::new(prod.clone(), BigInt::from(d));
    let diff = numbers::int(count) - &main_term;
    let defect = if diff < BigRational::zero() {
        -diff
    } else {
        diff
    };
    Ok(DivisibilityCount {
        count,
        main_term,
        defect,
        scale: BigRational::new(prod, BigInt::from(min)),
    })
}

/// The lattice `{n ∈ Z^k : A·n ≡ 0 (mod d)}` with an upper-triangular basis
/// (row `i` vanishes in columns `< i`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceLattice {
    pub a: Vec<i64>,
    pub d: i64,
    pub basis: Vec<Vec<i64>>,
}

fn inverse_mod(x: i64, m: i64) -> i64 {
    if m == 1 {
        return 0;
    }
    let e = x.rem_euclid(m).extended_gcd(&m);
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(m)
}

/// Inductive basis: for `g = gcd(A_k, d)` and a basis `b^(j)` of the lattice
/// for `(A_1..A_{k-1})` mod `g`, take `(b^(j), f_j)` and `(0, ..., 0, d/g)`.
fn basis_rec(a: &[i64], d: i64) -> Vec<Vec<i64>> {
    let k = a.len();
    if k == 1 {
        return vec![vec![d]];
    }
    let ak = a[k - 1];
    let g = ak.gcd(&d);
    let inv = inverse_mod(ak / g, d / g);
    let modulus = d / g;
    let mut rows = Vec::with_capacity(k);
    for b in basis_rec(&a[..k - 1], g) {
        let dot: i128 = a.iter().zip(&b).map(|(&x, &y)| x as i128 * y as i128).sum();
        let f = (-(inv as i128) * (dot / g as i128)).rem_euclid(modulus as i128) as i64;
        let mut row = b;
        row.push(f);
        rows.push(row);
    }
    let mut last = vec![0; k];
    last[k - 1] = modulus;
    rows.push(last);
    rows
}

pub fn lattice_basis(a: &[i64], d: i64) -> Result<CongruenceLattice> {
    if a.is_empty() || d <= 0 || a.iter().any(|&x| x <= 0) {
        return Err(Error::param("A must be non-empty and positive, d positive"));
    }
    if a.iter().fold(d, |acc, &x| acc.gcd(&x)) != 1 {
        return Err(Error::param("gcd(A_1, ..., A_k, d) must be 1"));
    }
    Ok(CongruenceLattice {
        a: a.to_vec(),
        d,
        basis: basis_rec(a, d),
    })
}

impl CongruenceLattice {
    pub fn rank(&self) -> usize {
        self.a.len()
    }

    /// Product of the diagonal of the triangular basis.
    pub fn det(&self) -> i64 {
        (0..self.rank()).map(|i| self.basis[i][i]).product()
    }

    pub fn satisfies_congruence(&self, n: &[i64]) -> bool {
        let s: i128 = self
            .a
            .iter()
            .zip(n)
            .map(|(&x, &y)| x as i128 * y as i128)
            .sum();
        s.rem_euclid(self.d as i128) == 0
    }

    /// Integer coordinates of `n` in the basis, if they exist.
    pub fn coordinates(&self, n: &[i64]) -> Option<Vec<i64>> {
        let k = self.rank();
        let mut rest: Vec<i128> = n.iter().map(|&x| x as i128).collect();
        let mut c = vec![0; k];
        for i in 0..k {
            let diag = self.basis[i][i] as i128;
            if rest[i] % diag != 0 {
                return None;
            }
            let ci = rest[i] / diag;
            c[i] = ci as i64;
            for (r, b) in rest[i..k].iter_mut().zip(&self.basis[i][i..k]) {
                *r -= ci * *b as i128;
            }
        }
        Some(c)
    }

    pub fn contains(&self, n: &[i64]) -> bool {
        self.coordinates(n).is_some()
    }

    /// Successive minima `λ_1 <= ... <= λ_k` (Euclidean) as squared norms,
    /// by exhaustive search within the longest basis row.
    pub fn successive_minima_sq(&self) -> Result<Vec<i64>> {
        let k = self.rank();
        let r2: i64 = self
            .basis
            .iter()
            .map(|row| row.iter().map(|x| x * x).sum())
            .max()
            .unwrap_or(0);
        let r = numbers::isqrt(&num_bigint::BigUint::from(r2 as u64))
            .to_i64()
            .unwrap_or(0)
            + 1;
        let side = (2 * r + 1) as u64;
        if side
            .checked_pow(k as u32)
            .is_none_or(|s| s > ENUMERATION_BUDGET * 5)
        {
            return Err(Error::budget("short-vector search box too large"));
        }
        let mut vecs: Vec<(i64, Vec<i64>)> = Vec::new();
        let mut v = vec![-r; k];
        loop {
            let n2: i64 = v.iter().map(|x| x * x).sum();
            if n2 > 0 && n2 <= r2 && self.satisfies_congruence(&v) {
                vecs.push((n2, v.clone()));
            }
            let mut i = 0;
            while i < k && v[i] == r {
                v[i] = -r;
                i += 1;
            }
            if i == k {
                break;
            }
            v[i] += 1;
        }
        vecs.sort();
        let mut chosen: Vec<Vec<i64>> = Vec::new();
        let mut minima = Vec::new();
        for (n2, v) in vecs {
            let mut trial = chosen.clone();
            trial.push(v);
            if rank_of(&trial) == trial.len() {
                chosen = trial;
                minima.push(n2);
                if minima.len() == k {
                    break;
                }
            }
        }
        if minima.len() < k {
            return Err(Error::NotCertified(String::from(
                "short-vector search did not reach full rank",
            )));
        }
        Ok(minima)
    }
}

/// Rank of an integer matrix by fraction-free elimination.
fn rank_of(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank].clone();
        for row in &mut m[rank + 1..] {
            let (x, y) = (pivot[c], row[c]);
            for (v, w) in row.iter_mut().zip(&pivot[..cols]) {
                *v = *v * x - w * y;
            }
            let g = row.iter().fold(0i128, |acc, v| acc.gcd(v));
            if g > 1 {
                row.iter_mut().for_each(|v| *v /= g);
            }
        }
        rank += 1;
    }
    rank
}

/// Suite constant `C_k` in `|count − vol/det| <= C_k Σ_j V_j / (λ_1 ⋯ λ_j)`.
pub fn davenport_constant(k: usize) -> u64 {
    1 << k
}

#[derive(Clone, Debug, PartialEq)]
pub struct DavenportReport {
    pub count: u64,
    pub vol_over_det: BigRational,
    /// `|count − vol/det|`.
    pub error: BigRational,
    pub bound: f64,
    pub minima: Vec<f64>,
}

impl DavenportReport {
    pub fn holds(&self) -> bool {
        numbers::to_f64_directed(&self.error, true) <= self.bound
    }
}

/// Lattice points in the closed box `Π [lo_i, hi_i]`.
pub fn davenport_check(
    boxes: &[(BigRational, BigRational)],
    l: &CongruenceLattice,
) -> Result<DavenportReport> {
    let k = l.rank();
    if boxes.len() != k || k > 3 {
        return Err(Error::param(
            "box dimension must match the lattice rank, k <= 3",
        ));
    }
    if boxes.iter().any(|(lo, hi)| lo > hi) {
        return Err(Error::param("box side with lo > hi"));
    }
    let ranges: Vec<(i64, i64)> = boxes
        .iter()
        .map(|(lo, hi)| {
            (
                numbers::ceil(lo).to_i64().unwrap_or(i64::MAX),
                numbers::floor(hi).to_i64().unwrap_or(i64::MIN),
            )
        })
        .collect();
    let total = ranges.iter().try_fold(1u64, |acc, &(lo, hi)| {
        acc.checked_mul((hi - lo + 1).max(0) as u64)
    });
    if total.is_none_or(|t| t > ENUMERATION_BUDGET * 5) {
        return Err(Error::budget("box too large to enumerate"));
    }
    let mut count = 0u64;
    if ranges.iter().all(|&(lo, hi)| lo <= hi) {
        let mut v: Vec<i64> = ranges.iter().map(|r| r.0).collect();
        loop {
            if l.satisfies_congruence(&v) {
                count += 1;
            }
            let mut i = 0;
            while i < k && v[i] == ranges[i].1 {
                v[i] = ranges[i].0;
                i += 1;
            }
            if i == k {
                break;
            }
            v[i] += 1;
        }
    }
    let sides: Vec<BigRational> = boxes.iter().map(|(lo, hi)| hi - lo).collect();
    let vol = sides.iter().fold(BigRational::one(), |acc, s| acc * s);
    let vol_over_det = vol / numbers::int(l.d);
    let diff = numbers::int(count) - &vol_over_det;
    let error = if diff < BigRational::zero() {
        -diff
    } else {
        diff
    };
    let minima: Vec<f64> = l
        .successive_minima_sq()?
        .iter()
        .map(|&n2| libm::sqrt(n2 as f64))
        .collect();
    // V_j <= e_j(sides): a j-dimensional projection of a box has volume at
    // most the sum of its j-face areas
    let s: Vec<f64> = sides
        .iter()
        .map(|x| numbers::to_f64_directed(x, true))
        .collect();
    let mut e = vec![0.0; k + 1];
    e[0] = 1.0;
    for &x in &s {
        for j in (1..=k).rev() {
            e[j] += e[j - 1] * x;
        }
    }
    let mut sum = 0.0;
    let mut lam = 1.0;
    for j in 0..k {
        if j > 0 {
            lam *= minima[j - 1];
        }
        sum += e[j] / lam;
    }
    let bound = davenport_constant(k) as f64 * sum * (1.0 + 1e-12);
    Ok(DavenportReport {
        count,
        vol_over_det,
        error,
        bound,
        minima,
    })
}
