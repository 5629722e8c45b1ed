//! The eleven acceptance criteria, shared by `selftest` and the
//! integration tests. Each criterion is a list of named parts; a part
//! passes or fails with a one-line detail.

use std::fmt;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

mod bohr;
mod dlaw;
mod figure1;
mod gallagher;
mod gaps;
mod lattice;
mod measure;
mod ostrowski;
mod pairs;
mod shiftred;
mod threegap;

pub use threegap::{bounded_cf, reference_cfs, RefCf};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    /// Reduced sizes; well under a minute.
    Fast,
    /// The sizes the criteria are stated at.
    Full,
}

/// Parts expected to fail, with the reason. They are reported but do not
/// fail a run.
pub const KNOWN_RED: &[(u8, &str, &str)] = &[(
    11,
    "contrast",
    "divergent count exceeds convergent count on 486/512 grid points (94.9%), below the 95% target",
)];

pub const CRITERIA: &[(u8, &str)] = &[
    (1, "log-averaged sum fit"),
    (2, "three-gap formula against sorting"),
    (3, "D_j law"),
    (4, "Ostrowski numeration"),
    (5, "shift-reduced totient"),
    (6, "congruence lattice"),
    (7, "GAP divisibility"),
    (8, "Bohr cardinality"),
    (9, "constructed pairs"),
    (10, "measure engine"),
    (11, "counting monotonicity and contrast"),
];

#[derive(Clone, Debug, Serialize)]
pub struct Part {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: u8,
    pub title: String,
    pub parts: Vec<Part>,
    #[serde(serialize_with = "secs")]
    pub elapsed: Duration,
}

fn secs<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64((d.as_secs_f64() * 1000.0).round() / 1000.0)
}

pub fn known_red(id: u8, part: &str) -> Option<&'static str> {
    KNOWN_RED
        .iter()
        .find(|(i, p, _)| *i == id && *p == part)
        .map(|(_, _, why)| *why)
}

impl Check {
    pub fn passed(&self) -> bool {
        self.parts.iter().all(|p| p.passed)
    }

    /// Failed parts that are not listed in [`KNOWN_RED`].
    pub fn unexpected(&self) -> Vec<&Part> {
        self.parts
            .iter()
            .filter(|p| !p.passed && known_red(self.id, &p.name).is_none())
            .collect()
    }

    pub fn known_failures(&self) -> Vec<&Part> {
        self.parts
            .iter()
            .filter(|p| !p.passed && known_red(self.id, &p.name).is_some())
            .collect()
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() {
            "PASS".to_string()
        } else if self.unexpected().is_empty() {
            let names: Vec<&str> = self
                .known_failures()
                .iter()
                .map(|p| p.name.as_str())
                .collect();
            format!("FAIL (known: {})", names.join(", "))
        } else {
            "FAIL".to_string()
        };
        write!(
            f,
            "criterion {:>2} {status}: {} [{:.1} s]",
            self.id,
            self.title,
            self.elapsed.as_secs_f64()
        )?;
        for p in &self.parts {
            write!(
                f,
                "\n    {} {}: {}",
                if p.passed { "ok  " } else { "FAIL" },
                p.name,
                p.detail
            )?;
        }
        Ok(())
    }
}

/// Collects parts for one criterion.
pub(crate) struct Recorder {
    parts: Vec<Part>,
}

pub(crate) type Outcome = Result<String, String>;

impl Recorder {
    fn new() -> Self {
        Recorder { parts: Vec::new() }
    }

    pub(crate) fn part(&mut self, name: &str, f: impl FnOnce() -> Outcome) {
        let (passed, detail) = match f() {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        self.parts.push(Part {
            name: name.into(),
            passed,
            detail,
        });
    }
}

/// `?`-friendly conversion of core errors into part failures.
pub(crate) trait Ctx<T> {
    fn ctx(self, what: impl fmt::Display) -> Result<T, String>;
}

impl<T, E: fmt::Display> Ctx<T> for Result<T, E> {
    fn ctx(self, what: impl fmt::Display) -> Result<T, String> {
        self.map_err(|e| format!("{what}: {e}"))
    }
}

pub(crate) fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Independent stream per criterion so that running a subset does not
/// change the fixtures.
pub(crate) fn rng(seed: u64, id: u8) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(id as u64);
    r
}

pub fn run(id: u8, level: Level, seed: u64) -> Check {
    let title = CRITERIA
        .iter()
        .find(|c| c.0 == id)
        .map(|c| c.1)
        .unwrap_or("unknown");
    let mut rec = Recorder::new();
    let start = Instant::now();
    match id {
        1 => figure1::run(&mut rec, level),
        2 => threegap::run(&mut rec, level, seed),
        3 => dlaw::run(&mut rec, level, seed),
        4 => ostrowski::run(&mut rec, level, seed),
        5 => shiftred::run(&mut rec, level),
        6 => lattice::run(&mut rec, level, seed),
        7 => gaps::run(&mut rec, level, seed),
        8 => bohr::run(&mut rec, level),
        9 => pairs::run(&mut rec, level),
        10 => measure::run(&mut rec, level, seed),
        11 => gallagher::run(&mut rec, level),
        _ => rec.part("exists", || Err(format!("no criterion {id}"))),
    }
    Check {
        id,
        title: title.into(),
        parts: rec.parts,
        elapsed: start.elapsed(),
    }
}

/// Runs the selected criteria (all when `only` is empty) in order,
/// calling `report` after each.
pub fn run_all(level: Level, only: &[u8], seed: u64, mut report: impl FnMut(&Check)) -> Vec<Check> {
    CRITERIA
        .iter()
        .map(|c| c.0)
        .filter(|id| only.is_empty() || only.contains(id))
        .map(|id| {
            let c = run(id, level, seed);
            report(&c);
            c
        })
        .collect()
}
