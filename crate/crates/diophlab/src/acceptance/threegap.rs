use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use diophlab_core::contfrac::ContinuedFraction;
use diophlab_core::numbers::{pow2_inv, ratio, QuadraticSurd};
use diophlab_core::threegap::{brute_gaps, largest_gap};
use diophlab_core::RealSpec;

use super::{ensure, Ctx, Level, Recorder};

/// A named real with its expansion.
#[derive(Clone, Debug)]
pub struct RefCf {
    pub name: String,
    pub alpha: RealSpec,
    pub cf: ContinuedFraction,
}

impl RefCf {
    fn surd(name: &str, s: QuadraticSurd) -> Self {
        let cf = s.continued_fraction();
        RefCf {
            name: name.into(),
            alpha: RealSpec::Surd(s),
            cf,
        }
    }

    fn stream(name: &str, cf: ContinuedFraction) -> Self {
        RefCf {
            name: name.into(),
            alpha: RealSpec::Stream(cf.clone()),
            cf,
        }
    }
}

/// `[0; a_1, a_2, ...]` with `a_j` uniform in `1..=bound`, each quotient a
/// pure function of `(seed, index, j)`.
pub fn bounded_cf(seed: u64, index: u64, bound: u64) -> RefCf {
    let id = format!("random:{seed}:{index}:{bound}");
    let cf = ContinuedFraction::rule(id.clone(), move |j| {
        if j == 0 {
            return Some(BigInt::from(0));
        }
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        r.set_stream(index);
        r.set_word_pos(16 * j as u128);
        Some(BigInt::from(r.random_range(1..=bound)))
    });
    RefCf::stream(&id, cf)
}

/// √2, the golden ratio, `[0; k, k, ...]` for `k <= 5`, e, √3, √5, √7 and
/// then bounded random expansions up to `count`.
pub fn reference_cfs(seed: u64, count: usize, bound: u64) -> Vec<RefCf> {
    let surd = |d| QuadraticSurd::sqrt(d).expect("nonsquare");
    let mut v = vec![
        RefCf::surd("sqrt2", surd(2)),
        RefCf::surd(
            "golden",
            QuadraticSurd::new(ratio(1, 2), ratio(1, 2), 5u32.into()).expect("surd"),
        ),
    ];
    for k in 1..=5 {
        let id = format!("const:{k}");
        v.push(RefCf::stream(
            &id,
            ContinuedFraction::named(&id).expect("named"),
        ));
    }
    v.push(RefCf::stream(
        "e",
        ContinuedFraction::named("e").expect("named"),
    ));
    for d in [3, 5, 7] {
        v.push(RefCf::surd(&format!("sqrt{d}"), surd(d)));
    }
    let mut i = 0;
    while v.len() < count {
        v.push(bounded_cf(seed, i, bound));
        i += 1;
    }
    v.truncate(count.max(1));
    v
}

pub(super) fn run(rec: &mut Recorder, level: Level, seed: u64) {
    let (count, m_max) = match level {
        Level::Fast => (6, 60),
        Level::Full => (20, 300),
    };
    let width = pow2_inv(100);
    for r in reference_cfs(seed, count, 10) {
        rec.part(&r.name, || {
            let mut three = true;
            for m in 1..=m_max {
                let brute = brute_gaps(m, &r.alpha, &width).ctx(format!("brute m = {m}"))?;
                let formula =
                    largest_gap(m, &r.alpha, &r.cf, &width).ctx(format!("formula m = {m}"))?;
                ensure(formula.intersects(brute.max()), || {
                    format!("m = {m}: formula {formula} vs sorted {}", brute.max())
                })?;
                let d = &brute.distinct;
                if d.len() >= 2 {
                    ensure(d[d.len() - 1].lo() > d[d.len() - 2].hi(), || {
                        format!("m = {m}: largest gap not separated")
                    })?;
                }
                three &= brute.three_distance();
            }
            ensure(three, || "more than three gap lengths".into())?;
            Ok(format!("m <= {m_max}"))
        });
    }
}
