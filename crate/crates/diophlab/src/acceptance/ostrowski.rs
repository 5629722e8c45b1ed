use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use diophlab_core::ostrowski::{
    check_gap_pattern, cylinder_up_to, decode_with, encode_with, validate_with, Scale,
};
use diophlab_core::Error;

use super::threegap::{reference_cfs, RefCf};
use super::{ensure, rng, Ctx, Level, Recorder};

/// Partial quotients `a_1..a_len` read through a scale.
fn quotients(scale: &mut Scale, len: usize) -> Result<Vec<u64>, String> {
    (1..=len)
        .map(|k| {
            scale
                .a(k)
                .ctx("quotient")
                .map(|a| a.to_u64().unwrap_or(u64::MAX))
        })
        .collect()
}

/// The digit rules, stated directly on `c_1..c_L` and `a_1..a_L`.
fn digits_valid(c: &[u64], a: &[u64]) -> bool {
    (0..c.len()).all(|k| match k {
        0 => c[0] < a[0],
        _ => c[k] <= a[k] && (c[k] < a[k] || c[k - 1] == 0),
    })
}

fn starts_with(digits: &[BigUint], prefix: &[BigUint]) -> bool {
    prefix
        .iter()
        .enumerate()
        .all(|(i, p)| digits.get(i).map_or(p.is_zero(), |d| d == p))
}

pub(super) fn run(rec: &mut Recorder, level: Level, seed: u64) {
    let all = reference_cfs(seed, 10, 10);
    let pick = |name: &str| {
        all.iter()
            .find(|r| r.name == name)
            .cloned()
            .expect("reference expansion")
    };
    let refs: Vec<RefCf> = ["golden", "sqrt2", "e"].iter().map(|n| pick(n)).collect();
    let n_max: u64 = match level {
        Level::Fast => 10_000,
        Level::Full => 100_000,
    };
    for r in &refs {
        rec.part(&format!("roundtrip {}", r.name), || {
            let mut scale = Scale::new(&r.cf).ctx("scale")?;
            for n in 1..=n_max {
                let n = BigUint::from(n);
                let d = encode_with(&n, &mut scale).ctx(format!("encode {n}"))?;
                validate_with(&d.digits, &mut scale).ctx(format!("digits of {n}"))?;
                let back = decode_with(&d, &mut scale).ctx(format!("decode {n}"))?;
                ensure(back == n, || format!("{n} decodes to {back}"))?;
            }
            Ok(format!("n <= {n_max}"))
        });
    }

    rec.part("gaps pattern", || {
        let bound = BigUint::from(3_000u32);
        let mut cylinders = 0;
        for r in &refs {
            let mut scale = Scale::new(&r.cf).ctx("scale")?;
            let a = quotients(&mut scale, 3)?;
            let mut prefixes: Vec<Vec<u64>> = vec![vec![]];
            for len in 1..=3 {
                prefixes = prefixes
                    .iter()
                    .flat_map(|p| (0..=a[len - 1]).map(move |c| [p.as_slice(), &[c]].concat()))
                    .filter(|p| digits_valid(p, &a))
                    .collect();
                for p in &prefixes {
                    let p: Vec<BigUint> = p.iter().map(|&c| BigUint::from(c)).collect();
                    let g =
                        check_gap_pattern(&p, &r.cf, &bound).ctx(format!("{} {p:?}", r.name))?;
                    ensure(g.holds, || {
                        format!("{} prefix {p:?}: gap sizes {:?}", r.name, g.sizes)
                    })?;
                    let elems = cylinder_up_to(&p, &r.cf, &bound).ctx("cylinder")?;
                    let mut brute = Vec::new();
                    for n in 1..=3_000u32 {
                        let n = BigUint::from(n);
                        if starts_with(&encode_with(&n, &mut scale).ctx("encode")?.digits, &p) {
                            brute.push(n);
                        }
                    }
                    ensure(elems == brute, || {
                        format!("{} prefix {p:?}: cylinder differs from a scan", r.name)
                    })?;
                    cylinders += 1;
                }
            }
        }
        ensure(cylinders >= 10, || format!("only {cylinders} cylinders"))?;
        Ok(format!("{cylinders} cylinders up to 3000"))
    });

    let target = match level {
        Level::Fast => 1_000,
        Level::Full => 10_000,
    };
    rec.part("validator", || {
        let mut rng = rng(seed, 4);
        let pool: Vec<RefCf> = ["sqrt2", "e", "const:3", "const:5"]
            .iter()
            .map(|n| pick(n))
            .collect();
        let mut scales = pool
            .iter()
            .map(|r| Scale::new(&r.cf))
            .collect::<Result<Vec<_>, _>>()
            .ctx("scale")?;
        let quot = scales
            .iter_mut()
            .map(|s| quotients(s, 12))
            .collect::<Result<Vec<_>, _>>()?;
        let (mut invalid, mut valid) = (0, 0);
        while invalid < target {
            let i = rng.random_range(0..pool.len());
            let len = rng.random_range(1..=12);
            let c: Vec<u64> = (0..len)
                .map(|k| rng.random_range(0..=quot[i][k] + 1))
                .collect();
            let digits: Vec<BigUint> = c.iter().map(|&x| BigUint::from(x)).collect();
            let verdict = validate_with(&digits, &mut scales[i]);
            if digits_valid(&c, &quot[i]) {
                verdict.ctx(format!("{} rejected valid {c:?}", pool[i].name))?;
                valid += 1;
            } else {
                ensure(matches!(verdict, Err(Error::InvalidDigits(_))), || {
                    format!("{} accepted invalid {c:?}", pool[i].name)
                })?;
                invalid += 1;
            }
        }
        Ok(format!(
            "{invalid} invalid strings rejected, {valid} valid accepted"
        ))
    });
}
