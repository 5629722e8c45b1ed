//! Tables, number formatting and output files.

use std::io::Write;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use diophlab_core::{BigRational, Enclosure};

use crate::error::CliResult;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// A header and string cells, written as CSV or as a JSON array of
/// objects.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write(&self, w: impl Write, format: Format) -> CliResult<()> {
        match format {
            Format::Csv => {
                let mut c = csv::Writer::from_writer(w);
                c.write_record(&self.header)?;
                for r in &self.rows {
                    c.write_record(r)?;
                }
                c.flush()?;
            }
            Format::Json => {
                let v: Vec<serde_json::Map<String, serde_json::Value>> = self
                    .rows
                    .iter()
                    .map(|r| {
                        self.header
                            .iter()
                            .cloned()
                            .zip(r.iter().map(|c| serde_json::Value::from(c.as_str())))
                            .collect()
                    })
                    .collect();
                let mut w = w;
                serde_json::to_writer_pretty(&mut w, &v).map_err(std::io::Error::from)?;
                writeln!(w)?;
            }
        }
        Ok(())
    }
}

/// What a command produces: an optional table, a summary and any files
/// that belong next to the table.
#[derive(Debug, Default)]
pub struct Output {
    pub table: Option<Table>,
    pub summary: serde_json::Value,
    /// `(suffix, contents)`; written beside `--out` as `<stem><suffix>`.
    pub companions: Vec<(String, String)>,
    /// Where the table goes when `--out` is not given.
    pub default_out: Option<PathBuf>,
}

impl Output {
    pub fn summary(summary: serde_json::Value) -> Self {
        Output {
            summary,
            ..Default::default()
        }
    }

    pub fn table(table: Table, summary: serde_json::Value) -> Self {
        Output {
            table: Some(table),
            summary,
            ..Default::default()
        }
    }
}

/// `dir/stem` of a path, for companion files.
pub fn companion_path(out: &Path, suffix: &str) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    out.with_file_name(format!("{stem}{suffix}"))
}

/// Scientific notation with `sig` significant digits, rounded toward
/// `+∞` when `up` and toward `−∞` otherwise.
pub fn sci(r: &BigRational, sig: u32, up: bool) -> String {
    if r.is_zero() {
        return "0".into();
    }
    let neg = r.is_negative();
    let a = r.abs();
    // 10^e <= a < 10^(e+1)
    let bits = a.numer().bits() as i64 - a.denom().bits() as i64;
    let mut e = (bits as f64 * std::f64::consts::LOG10_2).floor() as i64;
    let ten = BigRational::from_integer(BigInt::from(10));
    let pow = |k: i64| -> BigRational {
        let p = num_traits::pow(ten.clone(), k.unsigned_abs() as usize);
        if k >= 0 {
            p
        } else {
            p.recip()
        }
    };
    while a >= pow(e + 1) {
        e += 1;
    }
    while a < pow(e) {
        e -= 1;
    }
    let scaled = &a / pow(e) * pow(sig as i64 - 1);
    // magnitude rounding direction flips with the sign
    let away = up != neg;
    let (q, rem) = scaled.numer().div_rem(scaled.denom());
    let mut m = q;
    if away && !rem.is_zero() {
        m += 1;
    }
    if m.to_string().len() > sig as usize {
        m /= 10;
        e += 1;
        // dividing a power of ten is exact, so no further carry
    }
    let digits = m.to_string();
    let (head, tail) = digits.split_at(1);
    let tail = tail.trim_end_matches('0');
    let sign = if neg { "-" } else { "" };
    if tail.is_empty() {
        format!("{sign}{head}e{e}")
    } else {
        format!("{sign}{head}.{tail}e{e}")
    }
}

/// `(lo, hi)` of an enclosure rounded outward to `sig` digits.
pub fn enclosure_cells(e: &Enclosure, sig: u32) -> (String, String) {
    (sci(e.lo(), sig, false), sci(e.hi(), sig, true))
}

pub fn enclosure_json(e: &Enclosure, sig: u32) -> serde_json::Value {
    let (lo, hi) = enclosure_cells(e, sig);
    serde_json::json!([lo, hi])
}

pub fn rational_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Shortest round-trip form of a float.
pub fn float(x: f64) -> String {
    format!("{x:?}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn scientific_rounding() {
        assert_eq!(sci(&r(1, 3), 4, false), "3.333e-1");
        assert_eq!(sci(&r(1, 3), 4, true), "3.334e-1");
        assert_eq!(sci(&r(-1, 3), 4, true), "-3.333e-1");
        assert_eq!(sci(&r(-1, 3), 4, false), "-3.334e-1");
        assert_eq!(sci(&r(9999, 1000), 3, true), "1e1");
        assert_eq!(sci(&r(5, 1), 6, true), "5e0");
        assert_eq!(sci(&r(1, 1000), 2, false), "1e-3");
    }

    #[test]
    fn csv_and_json() {
        let mut t = Table::new(&["j", "q"]);
        t.push(vec!["0".into(), "1".into()]);
        let mut b = Vec::new();
        t.write(&mut b, Format::Csv).unwrap();
        assert_eq!(String::from_utf8(b).unwrap(), "j,q\n0,1\n");
        let mut b = Vec::new();
        t.write(&mut b, Format::Json).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&b).unwrap();
        assert_eq!(v[0]["q"], "1");
    }
}
