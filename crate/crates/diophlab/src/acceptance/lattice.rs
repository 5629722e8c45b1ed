use num_integer::Integer;
use rand::Rng;

use diophlab_core::bohr::{lattice_basis, CongruenceLattice};

use super::{ensure, rng, Ctx, Level, Recorder};

fn congruent(a: &[i64], d: i64, n: &[i64]) -> bool {
    a.iter()
        .zip(n)
        .map(|(&x, &y)| x * y)
        .sum::<i64>()
        .rem_euclid(d)
        == 0
}

/// Calls `f` on every point of `[lo, hi]^k`.
fn for_box(
    k: usize,
    lo: i64,
    hi: i64,
    mut f: impl FnMut(&[i64]) -> Result<(), String>,
) -> Result<(), String> {
    let mut n = vec![lo; k];
    loop {
        f(&n)?;
        let mut i = 0;
        loop {
            if i == k {
                return Ok(());
            }
            if n[i] < hi {
                n[i] += 1;
                break;
            }
            n[i] = lo;
            i += 1;
        }
    }
}

fn agree(l: &CongruenceLattice, n: &[i64]) -> Result<(), String> {
    let want = congruent(&l.a, l.d, n);
    ensure(l.contains(n) == want, || {
        format!(
            "A = {:?}, d = {}: membership of {n:?} should be {want}",
            l.a, l.d
        )
    })
}

/// Largest `d` at which the whole box `[−d, d]^k` is scanned; above it the
/// scan uses `dZ^k ⊆ L` to reduce to residues mod `d`.
fn full_box_limit(k: usize) -> i64 {
    match k {
        1 | 2 => i64::MAX,
        3 => 20,
        _ => 8,
    }
}

fn check_one(a: &[i64], d: i64) -> Result<(), String> {
    let k = a.len();
    let l = lattice_basis(a, d).ctx(format!("A = {a:?}, d = {d}"))?;
    ensure(l.det().abs() == d, || {
        format!("A = {a:?}, d = {d}: det {}", l.det())
    })?;
    for row in &l.basis {
        ensure(congruent(a, d, row), || {
            format!("A = {a:?}, d = {d}: basis row {row:?} off the lattice")
        })?;
    }
    if d <= full_box_limit(k) {
        return for_box(k, -d, d, |n| agree(&l, n));
    }
    // both sets are invariant under dZ^k
    for i in 0..k {
        let mut e = vec![0; k];
        e[i] = d;
        ensure(l.contains(&e), || {
            format!("A = {a:?}, d = {d}: d e_{i} not in the lattice")
        })?;
    }
    if k == 3 {
        return for_box(3, 0, d - 1, |n| agree(&l, n));
    }
    // k = 4: along each line (n1, n2, n3, ·) the lattice is empty or a coset
    // of B_44 Z, and the congruence set is empty or a coset of (d/g)Z
    let g = a[3].gcd(&d);
    let step = d / g;
    ensure(l.basis[3][3] == step, || {
        format!("A = {a:?}, d = {d}: last pivot {} != d/g", l.basis[3][3])
    })?;
    for t in 1..step {
        ensure(!l.contains(&[0, 0, 0, t]), || {
            format!("A = {a:?}, d = {d}: (0,0,0,{t}) in the lattice")
        })?;
    }
    let inv = if step == 1 {
        0
    } else {
        (a[3] / g)
            .rem_euclid(step)
            .extended_gcd(&step)
            .x
            .rem_euclid(step)
    };
    for_box(3, 0, d - 1, |m| {
        let s = a[0] * m[0] + a[1] * m[1] + a[2] * m[2];
        if s % g != 0 {
            return agree(&l, &[m[0], m[1], m[2], 0]);
        }
        let r = (-(s / g) * inv).rem_euclid(step);
        agree(&l, &[m[0], m[1], m[2], r])?;
        if step > 1 {
            agree(&l, &[m[0], m[1], m[2], (r + 1) % step])?;
        }
        Ok(())
    })
}

pub(super) fn run(rec: &mut Recorder, level: Level, seed: u64) {
    let (d_max, trials) = match level {
        Level::Fast => (12, 10),
        Level::Full => (50, 100),
    };
    let mut rng = rng(seed, 6);
    for k in 1..=4usize {
        rec.part(&format!("rank {k}"), || {
            for d in 1..=d_max {
                for _ in 0..trials {
                    let a = loop {
                        let a: Vec<i64> = (0..k).map(|_| rng.random_range(1..=d.max(2))).collect();
                        if a.iter().fold(d, |g, &x| g.gcd(&x)) == 1 {
                            break a;
                        }
                    };
                    check_one(&a, d)?;
                }
            }
            Ok(format!(
                "d <= {d_max}, {trials} A per d; full box up to d = {}",
                full_box_limit(k).min(d_max)
            ))
        });
    }
}
