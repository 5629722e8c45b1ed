use num_integer::Integer;

use diophlab_core::numbers::{ratio, QuadraticSurd};
use diophlab_core::shiftred::{closed_form_by_residues, totient, Anchors, Eta};
use diophlab_core::RealSpec;

use super::{ensure, Ctx, Level, Recorder};

pub(super) fn run(rec: &mut Recorder, level: Level) {
    let (zero_max, n_max) = match level {
        Level::Fast => (300, 500),
        Level::Full => (2_000, 5_000),
    };
    rec.part("zero shift is coprimality", || {
        let mut anchors = Anchors::new(&RealSpec::zero()).ctx("anchors")?;
        let eta = Eta::new(1, 2).ctx("eta")?;
        for n in 1..=zero_max {
            let anchor = anchors.anchor(eta, n).ctx("anchor")?;
            for a in 1..=n {
                ensure(anchor.is_reduced(a as i64) == (a.gcd(&n) == 1), || {
                    format!("a = {a}, n = {n}")
                })?;
            }
        }
        Ok(format!("a <= n <= {zero_max}"))
    });
    let golden_conjugate =
        QuadraticSurd::new(ratio(-1, 2), ratio(1, 2), 5u32.into()).expect("surd");
    let gammas = [
        ("22/7", RealSpec::rational(22, 7)),
        (
            "sqrt2",
            RealSpec::Surd(QuadraticSurd::sqrt(2).expect("surd")),
        ),
        ("golden-1", RealSpec::Surd(golden_conjugate)),
    ];
    for (name, gamma) in &gammas {
        rec.part(&format!("shifted totient, gamma = {name}"), || {
            let mut anchors = Anchors::new(gamma).ctx("anchors")?;
            for (p, d) in [(3, 10), (1, 2), (7, 10)] {
                let eta = Eta::new(p, d).ctx("eta")?;
                for n in 1..=n_max {
                    let anchor = anchors.anchor(eta, n).ctx("anchor")?;
                    let closed = anchor.closed_form();
                    ensure(closed_form_by_residues(&anchor) == closed, || format!("eta = {p}/{d}, n = {n}: residue count differs"))?;
                    let count = anchor.count();
                    let phi = totient(n).ctx("totient")?;
                    ensure(count >= phi && count == closed, || {
                        format!("eta = {p}/{d}, n = {n}: count {count}, closed form {closed}, phi {phi}")
                    })?;
                }
            }
            Ok(format!("n <= {n_max}, eta in {{3/10, 1/2, 7/10}}"))
        });
    }
}
