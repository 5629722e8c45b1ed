//! Gaps between the points `{iα}`, `0 <= i <= m`, on the unit interval:
//! the closed form for the largest gap, an exhaustive oracle, and a small
//! shift `b` with `‖bα − γ‖ <= 2/q_t`.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::contfrac::{convergents, d_value, ContinuedFraction};
use crate::error::{Error, Result};
use crate::numbers::{self, resolve, BigRational, Budget, Enclosure, RealSpec};

/// `m = r q_k + q_{k-1} + s` with `1 <= r <= a_{k+1}`, `0 <= s < q_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapDecomposition {
    pub m: u64,
    pub k: usize,
    pub r: BigInt,
    pub s: BigInt,
}

/// The unique `(k, r, s)`: `k` is the largest index with
/// `q_k + q_{k-1} <= m` (`q_{-1} = 0`).
pub fn gap_decomposition(m: u64, cf: &ContinuedFraction) -> Result<GapDecomposition> {
    if m == 0 {
        return Err(Error::param("m must be >= 1"));
    }
    let mb = BigInt::from(m);
    let mut depth = 4;
    loop {
        let t = convergents(cf, depth)?;
        let q = |j: usize| t.q_shifted(j); // q_{j-1}
        let mut k = None;
        for j in 0..depth {
            if t.q[j].clone() + q(j) <= mb {
                k = Some(j);
            } else {
                break;
            }
        }
        let Some(k) = k else {
            return Err(Error::param("m must be >= 1"));
        };
        if k + 1 >= depth {
            depth *= 2;
            continue;
        }
        let rest = &mb - q(k);
        let r = &rest / &t.q[k];
        let s = &rest % &t.q[k];
        if r < BigInt::one() || r > t.a[k + 1] {
            return Err(Error::NotCertified(format!(
                "gap decomposition of {m} has r = {r} out of range"
            )));
        }
        return Ok(GapDecomposition { m, k, r, s });
    }
}

/// Largest gap between consecutive points of `{0, {α}, ..., {mα}, 1}`
/// by the closed form in `|D_k|`, `|D_{k+1}|`, `a_{k+1}`, `r`, `s`.
pub fn largest_gap(
    m: u64,
    alpha: &RealSpec,
    cf: &ContinuedFraction,
    width: &BigRational,
) -> Result<Enclosure> {
    if alpha.is_rational() || cf.is_finite() {
        return Err(Error::param("largest_gap needs an irrational α"));
    }
    let g = gap_decomposition(m, cf)?;
    let t = convergents(cf, g.k + 2)?;
    let a = t.a[g.k + 1].clone();
    let factor = if g.s == &t.q[g.k] - 1 {
        if g.r == a {
            return Ok(d_value(cf, alpha, g.k, width)?.value.abs());
        }
        &a - &g.r
    } else if g.r == a {
        BigInt::one()
    } else {
        &a - &g.r + 1
    };
    let w = width / numbers::int(&factor + 2);
    let dk = d_value(cf, alpha, g.k, &w)?.value.abs();
    let dk1 = d_value(cf, alpha, g.k + 1, &w)?.value.abs();
    Ok(&dk1 + &dk.mul_int(&factor))
}

/// Sorted gaps of `{0, {α}, ..., {mα}, 1}` (ascending by lower end), with
/// coinciding points merged.
#[derive(Clone, Debug)]
pub struct BruteGaps {
    pub gaps: Vec<Enclosure>,
    /// Gap values after merging overlapping enclosures.
    pub distinct: Vec<Enclosure>,
}

impl BruteGaps {
    /// The gap with the largest lower end.
    pub fn max(&self) -> &Enclosure {
        self.gaps.last().expect("at least one gap")
    }
}

fn fractional_points(alpha: &Enclosure, m: u64) -> Option<Vec<(Enclosure, u64)>> {
    let mut pts = Vec::with_capacity(m as usize + 1);
    pts.push((Enclosure::zero(), 0));
    let mut acc = Enclosure::zero();
    for i in 1..=m {
        acc = &acc + alpha;
        pts.push((acc.frac()?, i));
    }
    Some(pts)
}

/// Integer version of [`sorted_points`]: `{iα}` as `[lo, hi] / 2^bits`, or
/// exactly as `r / q` for rational `α = p/q`.
fn grid_points(alpha: &RealSpec, m: u64, bits: u32) -> Result<Option<Vec<(Enclosure, u64)>>> {
    if m >= 1 << 24 {
        return Ok(None);
    }
    let (a_lo, a_hi, scale) = match alpha.as_rational() {
        Some(r) => match r.denom().to_i128().filter(|&d| d < 1 << 62) {
            Some(d) => {
                let p = r.numer().mod_floor(r.denom()).to_i128().expect("below d");
                (p, p, d)
            }
            None => return Ok(None),
        },
        None => {
            let w = numbers::pow2_inv(bits + 26);
            let Some(f) = alpha.enclose(&w)?.frac() else {
                return Ok(None);
            };
            let lo = numbers::scaled(f.lo(), bits, false).to_i128();
            let hi = numbers::scaled(f.hi(), bits, true).to_i128();
            match (lo, hi) {
                (Some(lo), Some(hi)) => (lo, hi, 1i128 << bits),
                _ => return Ok(None),
            }
        }
    };
    let mut pts: Vec<(i128, i128, u64)> = Vec::with_capacity(m as usize + 1);
    for i in 0..=m as i128 {
        let (lo, hi) = (i * a_lo, i * a_hi);
        let k = lo.div_euclid(scale) * scale;
        if hi - k >= scale && i > 0 {
            return Ok(None);
        }
        pts.push((lo - k, hi - k, i as u64));
    }
    pts.sort_unstable();
    let separated = pts
        .windows(2)
        .all(|p| p[0].1 < p[1].0 || (p[0].0 == p[0].1 && p[0].0 == p[1].0 && p[1].0 == p[1].1));
    if !separated {
        return Ok(None);
    }
    let d = BigInt::from(scale);
    let q = |x: i128| BigRational::new(BigInt::from(x), d.clone());
    Ok(Some(
        pts.into_iter()
            .map(|(lo, hi, i)| (Enclosure::new(q(lo), q(hi)), i))
            .collect(),
    ))
}

/// Points sorted on `[0, 1)` with certified order; equal exact points are
/// kept adjacent.
fn sorted_points(
    alpha: &RealSpec,
    m: u64,
    width: &BigRational,
    budget: &Budget,
) -> Result<Vec<(Enclosure, u64)>> {
    for bits in [64u32, 88] {
        if let Some(pts) = grid_points(alpha, m, bits)? {
            return Ok(pts);
        }
    }
    resolve::resolve(budget, |w| {
        let w = if w < width { w.clone() } else { width.clone() };
        let a = alpha.enclose(&(&w / numbers::int(m + 1)))?;
        let Some(mut pts) = fractional_points(&a, m) else {
            return Ok(None);
        };
        pts.sort_by(|x, y| x.0.lo().cmp(y.0.lo()).then(x.1.cmp(&y.1)));
        let separated = pts
            .windows(2)
            .all(|p| p[0].0.hi() < p[1].0.lo() || (p[0].0.is_point() && p[0].0 == p[1].0));
        Ok(separated.then_some(pts))
    })
    .map_err(|e| match e {
        Error::Undecidable { .. } => {
            Error::unattainable(Enclosure::new(BigRational::zero(), BigRational::one()))
        }
        e => e,
    })
}

/// Exhaustive gap list.
pub fn brute_gaps(m: u64, alpha: &RealSpec, width: &BigRational) -> Result<BruteGaps> {
    let pts = sorted_points(alpha, m, width, &Budget::default())?;
    let mut gaps = Vec::with_capacity(pts.len());
    for p in pts.windows(2) {
        if p[0].0.is_point() && p[0].0 == p[1].0 {
            continue;
        }
        gaps.push(&p[1].0 - &p[0].0);
    }
    let last = &pts[pts.len() - 1].0;
    gaps.push(&Enclosure::point(BigRational::one()) - last);
    gaps.sort_by(|x, y| x.lo().cmp(y.lo()));
    let mut distinct: Vec<Enclosure> = Vec::new();
    for g in &gaps {
        match distinct.last_mut() {
            Some(d) if d.intersects(g) => *d = d.join(g),
            _ => distinct.push(g.clone()),
        }
    }
    Ok(BruteGaps { gaps, distinct })
}

/// A `b` in `[1, q_t]` whose orbit point `{bα}` is circularly nearest to
/// `{γ}`; ties go to the smaller `b`.
#[derive(Clone, Debug)]
pub struct SmallShift {
    pub b: u64,
    pub q_t: u64,
    /// Enclosure of `‖bα − γ‖`, certified `<= 2/q_t`.
    pub distance: Enclosure,
}

fn q_t_u64(cf: &ContinuedFraction, t: usize) -> Result<u64> {
    let tab = convergents(cf, t)?;
    tab.q[t]
        .to_u64()
        .filter(|&q| q <= 1 << 24)
        .ok_or_else(|| Error::budget(format!("q_{t} too large to scan")))
}

pub fn find_small_shift(t: usize, cf: &ContinuedFraction, gamma: &RealSpec) -> Result<SmallShift> {
    let alpha = RealSpec::Stream(cf.clone());
    let m = q_t_u64(cf, t)?;
    let budget = Budget::default();
    let bound = numbers::ratio(2, m);
    let pts = sorted_points(&alpha, m, &numbers::pow2_inv(64), &budget)?;
    // orbit points for b >= 1, sorted on the circle
    let orbit: Vec<&(Enclosure, u64)> = pts.iter().filter(|p| p.1 >= 1).collect();
    let g = resolve::resolve(&budget, |w| Ok(gamma.enclose(w)?.frac()))?;
    // first orbit point at or after {γ}
    let idx = orbit.partition_point(|p| p.0.hi() < g.lo());
    let n = orbit.len();
    let mut cands: Vec<u64> = Vec::new();
    for j in [idx % n, (idx + n - 1) % n, (idx + 1) % n] {
        cands.push(orbit[j].1);
    }
    cands.sort_unstable();
    cands.dedup();
    let od = numbers::OrbitDistance::new(alpha.clone(), gamma.clone())?;
    let mut best = cands[0];
    for &c in &cands[1..] {
        // keep the smaller b unless c is certifiably closer
        let closer = resolve::resolve(&budget, |w| {
            let (x, y) = (
                od.enclose(&BigInt::from(c), w)?,
                od.enclose(&BigInt::from(best), w)?,
            );
            Ok(match x.cmp_enclosure(&y) {
                Some(o) => Some(o == Ordering::Less),
                None if w < &numbers::pow2_inv(300) => Some(false),
                None => None,
            })
        })?;
        if closer {
            best = c;
        }
    }
    let distance = resolve::resolve(&budget, |w| {
        let d = od.enclose(&BigInt::from(best), w)?;
        Ok((d.hi() <= &bound).then_some(d))
    })
    .map_err(|_| Error::NotCertified(format!("‖bα − γ‖ <= 2/q_{t} failed for b = {best}")))?;
    Ok(SmallShift {
        b: best,
        q_t: m,
        distance,
    })
}

/// Exhaustive minimiser of `‖bα − γ‖` over `1 <= b <= q_t`, smallest `b`
/// on ties up to enclosure resolution.
pub fn small_shift_oracle(
    t: usize,
    cf: &ContinuedFraction,
    gamma: &RealSpec,
) -> Result<(u64, Enclosure)> {
    let m = q_t_u64(cf, t)?;
    let od = numbers::OrbitDistance::new(RealSpec::Stream(cf.clone()), gamma.clone())?;
    let w = numbers::pow2_inv(200);
    let mut best = (1u64, od.enclose(&BigInt::one(), &w)?);
    for b in 2..=m {
        let d = od.enclose(&BigInt::from(b), &w)?;
        if d.hi() < best.1.lo() {
            best = (b, d);
        }
    }
    Ok(best)
}

impl GapDecomposition {
    pub fn recompose(&self, cf: &ContinuedFraction) -> Result<BigInt> {
        let t = convergents(cf, self.k + 1)?;
        Ok(&self.r * &t.q[self.k] + t.q_shifted(self.k) + &self.s)
    }
}

impl BruteGaps {
    /// Whether at most three distinct values occur.
    pub fn three_distance(&self) -> bool {
        self.distinct.len() <= 3
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::{pow10_inv, ratio, QuadraticSurd};
    use proptest::prelude::*;

    fn named(id: &str) -> (RealSpec, ContinuedFraction) {
        let cf = ContinuedFraction::named(id).unwrap();
        (RealSpec::Stream(cf.clone()), cf)
    }

    #[test]
    fn decomposition_examples() {
        let (_, g) = named("golden_conjugate");
        let d = gap_decomposition(5, &g).unwrap();
        assert_eq!(
            (d.k, d.r.clone(), d.s.clone()),
            (3, BigInt::one(), BigInt::zero())
        );
        // m = q_k gives (k-1, a_k, 0)
        let (_, s) = named("sqrt2");
        let t = convergents(&s, 6).unwrap();
        let d = gap_decomposition(t.q[5].to_u64().unwrap(), &s).unwrap();
        assert_eq!((d.k, d.r, d.s), (4, t.a[5].clone(), BigInt::zero()));
        let (_, c2) = named("const:2");
        let d = gap_decomposition(1, &c2).unwrap();
        assert_eq!((d.k, d.r, d.s), (0, BigInt::one(), BigInt::zero()));
    }

    #[test]
    fn formula_matches_oracle_for_sqrt2() {
        let a = RealSpec::Surd(QuadraticSurd::sqrt(2).unwrap());
        let cf = a.continued_fraction();
        for m in 1..=40 {
            let f = largest_gap(m, &a, &cf, &pow10_inv(40)).unwrap();
            let b = brute_gaps(m, &a, &pow10_inv(40)).unwrap();
            assert!(f.intersects(b.max()), "m = {m}");
            assert!(b.three_distance());
        }
    }

    #[test]
    fn m_equal_one() {
        let (a, cf) = named("e");
        let f = largest_gap(1, &a, &cf, &pow10_inv(30)).unwrap();
        let x = a.enclose(&pow10_inv(40)).unwrap().frac().unwrap();
        let other = &Enclosure::point(BigRational::one()) - &x;
        let want = if x.lo() > other.hi() { x } else { other };
        assert!(f.intersects(&want));
    }

    #[test]
    fn rational_alpha_has_gap_one_over_q() {
        let b = brute_gaps(9, &RealSpec::rational(2, 7), &pow10_inv(10)).unwrap();
        assert_eq!(b.distinct.len(), 1);
        assert_eq!(*b.max(), Enclosure::point(ratio(1, 7)));
        assert!(largest_gap(
            3,
            &RealSpec::rational(2, 7),
            &crate::contfrac::cf_of_rational(&ratio(2, 7)),
            &pow10_inv(5)
        )
        .is_err());
    }

    #[test]
    fn small_shift_examples() {
        let (a, cf) = named("sqrt2");
        let half = RealSpec::rational(1, 2);
        let s = find_small_shift(6, &cf, &half).unwrap();
        let (b, d) = small_shift_oracle(6, &cf, &half).unwrap();
        assert_eq!(s.b, b);
        assert!(s.distance.intersects(&d));
        // γ = {α}
        let frac = a.minus_integer(&BigInt::one());
        assert_eq!(find_small_shift(5, &cf, &frac).unwrap().b, 1);
        let z = find_small_shift(5, &cf, &RealSpec::zero()).unwrap();
        assert_eq!(z.b, z.q_t);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn small_shift_agrees_with_scan(gn in 0i64..1000, t in 2usize..7, k in 1i64..5) {
            let cf = ContinuedFraction::named(&alloc::format!("const:{k}")).unwrap();
            let g = RealSpec::rational(gn, 997);
            let s = find_small_shift(t, &cf, &g).unwrap();
            let (b, d) = small_shift_oracle(t, &cf, &g).unwrap();
            prop_assert!(s.distance.hi() <= &ratio(2, s.q_t as i64));
            prop_assert!(s.distance.intersects(&d));
            prop_assert!(s.b == b || s.distance.intersects(&d));
        }
    }
}
