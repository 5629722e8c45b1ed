//! JSON input formats and their conversion into core types.

use std::path::Path;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use diophlab_core::bohr::GapShape;
use diophlab_core::contfrac::ContinuedFraction;
use diophlab_core::measure::Filter;
use diophlab_core::numbers::QuadraticSurd;
use diophlab_core::ostrowski::{self, GammaDigits, Pair, Schedule, TailRule};
use diophlab_core::shiftred::Eta;
use diophlab_core::sums::{ApproxFunction, XiRule};
use diophlab_core::{BigRational, RealSpec};

use crate::error::{CliError, CliResult};

/// Deserializes `text`, reporting the JSON path of the first bad value.
pub fn parse_json<T: DeserializeOwned>(text: &str, what: &str) -> CliResult<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| CliError::Schema {
        what: what.to_string(),
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })
}

/// A flag value is inline JSON when it starts with `{` or `[`, otherwise
/// the path of a JSON file.
pub fn read_json_arg<T: DeserializeOwned>(arg: &str, what: &str) -> CliResult<T> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return parse_json(arg, what);
    }
    let text = std::fs::read_to_string(Path::new(arg))
        .map_err(|e| CliError::usage(format!("{what}: cannot read {arg}: {e}")))?;
    parse_json(&text, what)
}

/// Integers may be given as JSON numbers or, when large, as strings.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum IntJson {
    Num(i64),
    Str(String),
}

impl IntJson {
    pub fn to_bigint(&self) -> CliResult<BigInt> {
        match self {
            IntJson::Num(n) => Ok(BigInt::from(*n)),
            IntJson::Str(s) => s
                .trim()
                .parse()
                .map_err(|_| CliError::usage(format!("not an integer: {s:?}"))),
        }
    }
}

/// `"p/q"`, `"p"` or a terminating decimal such as `"0.25"`, all exact.
pub fn parse_rational(s: &str) -> CliResult<BigRational> {
    let s = s.trim();
    let bad = || CliError::usage(format!("not a rational: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(CliError::usage(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = int.starts_with('-');
        let whole: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().map_err(|_| bad())?
        };
        let f: BigInt = frac.parse().map_err(|_| bad())?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let f = if neg { -f } else { f };
        return Ok(BigRational::new(whole * &den + f, den));
    }
    Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?))
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SurdJson {
    pub a: String,
    pub b: String,
    #[serde(rename = "D")]
    pub d: u64,
}

/// `{"rational": "p/q"} | {"surd": {...}} | {"cf": [...]} | {"cf_rule": id}`.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum RealSpecJson {
    Rational(String),
    Surd(SurdJson),
    Cf(Vec<IntJson>),
    CfRule(String),
}

impl RealSpecJson {
    pub fn to_spec(&self) -> CliResult<RealSpec> {
        Ok(match self {
            RealSpecJson::Rational(s) => RealSpec::Rational(parse_rational(s)?),
            RealSpecJson::Surd(s) => RealSpec::Surd(QuadraticSurd::new(
                parse_rational(&s.a)?,
                parse_rational(&s.b)?,
                BigUint::from(s.d),
            )?),
            RealSpecJson::Cf(v) => {
                let q = v
                    .iter()
                    .map(IntJson::to_bigint)
                    .collect::<CliResult<Vec<_>>>()?;
                RealSpec::Stream(ContinuedFraction::exact(q)?)
            }
            RealSpecJson::CfRule(id) => RealSpec::Stream(ContinuedFraction::named(id)?),
        })
    }
}

pub fn real_spec(arg: &str, what: &str) -> CliResult<RealSpec> {
    read_json_arg::<RealSpecJson>(arg, what)?.to_spec()
}

pub fn real_specs(v: &[RealSpecJson]) -> CliResult<Vec<RealSpec>> {
    v.iter().map(RealSpecJson::to_spec).collect()
}

/// `p/D` with both parts positive.
pub fn parse_eta(s: &str) -> CliResult<Eta> {
    let r = parse_rational(s)?;
    Ok(Eta::from_rational(&r)?)
}

/// `{"constant": c} | {"reciprocal": c} | {"reciprocal_square": c} |
/// {"reciprocal_log_square": {"c": c, "xi": "one" | "loglog"}} | {"table": [...]}`.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum PsiJson {
    Constant(String),
    Reciprocal(String),
    ReciprocalSquare(String),
    ReciprocalLogSquare {
        c: String,
        #[serde(default)]
        xi: XiJson,
    },
    Table(Vec<String>),
}

#[derive(Clone, Copy, Debug, Default, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum XiJson {
    #[default]
    One,
    Loglog,
}

impl PsiJson {
    pub fn to_function(&self) -> CliResult<ApproxFunction> {
        Ok(match self {
            PsiJson::Constant(c) => ApproxFunction::Constant(parse_rational(c)?),
            PsiJson::Reciprocal(c) => ApproxFunction::Reciprocal(parse_rational(c)?),
            PsiJson::ReciprocalSquare(c) => ApproxFunction::ReciprocalSquare(parse_rational(c)?),
            PsiJson::ReciprocalLogSquare { c, xi } => ApproxFunction::ReciprocalLogSquare {
                c: parse_rational(c)?,
                xi: match xi {
                    XiJson::One => XiRule::One,
                    XiJson::Loglog => XiRule::LogLog,
                },
            },
            PsiJson::Table(t) => ApproxFunction::Table(
                t.iter()
                    .map(|s| parse_rational(s))
                    .collect::<CliResult<_>>()?,
            ),
        })
    }
}

/// Tail rule of the `b` digits.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum TailJson {
    Zero,
    Half,
    Quarter,
    Sigma,
    Constant(u64),
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum ScheduleJson {
    Factorial,
    Relaxed,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ConstructJson {
    pub sigma: Vec<bool>,
    pub schedule: ScheduleJson,
    pub depth: usize,
}

/// An `(α, γ)` pair: either explicit digits or a construction request.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct PairJson {
    #[serde(default)]
    pub alpha_cf: Option<RealSpecJson>,
    #[serde(default)]
    pub b_prefix: Vec<IntJson>,
    #[serde(default)]
    pub b_tail_rule: Option<TailJson>,
    /// The bits `σ_k` for the `sigma` tail rule.
    #[serde(default)]
    pub sigma: Vec<bool>,
    #[serde(default)]
    pub construct: Option<ConstructJson>,
}

impl PairJson {
    pub fn to_pair(&self) -> CliResult<Pair> {
        if let Some(c) = &self.construct {
            if self.alpha_cf.is_some() {
                return Err(CliError::usage(
                    "give either alpha_cf or construct, not both",
                ));
            }
            let schedule = match c.schedule {
                ScheduleJson::Factorial => Schedule::Factorial,
                ScheduleJson::Relaxed => Schedule::Relaxed,
            };
            return Ok(ostrowski::sharpness_construct(&c.sigma, schedule, c.depth)?);
        }
        let alpha = self
            .alpha_cf
            .as_ref()
            .ok_or_else(|| CliError::usage("pair needs alpha_cf or construct"))?;
        let cf = match alpha.to_spec()? {
            RealSpec::Stream(cf) => cf,
            other => other.continued_fraction(),
        };
        let prefix = self
            .b_prefix
            .iter()
            .map(|b| {
                let v = b.to_bigint()?;
                if v.is_negative() {
                    return Err(CliError::usage("b digits must be non-negative"));
                }
                Ok(v.magnitude().clone())
            })
            .collect::<CliResult<Vec<_>>>()?;
        let tail = match self.b_tail_rule.clone().unwrap_or(TailJson::Zero) {
            TailJson::Zero => TailRule::Zero,
            TailJson::Half => TailRule::Half,
            TailJson::Quarter => TailRule::Quarter,
            TailJson::Sigma => TailRule::Sigma(self.sigma.clone()),
            TailJson::Constant(c) => TailRule::Constant(BigUint::from(c)),
        };
        Ok(Pair {
            cf,
            gamma: GammaDigits { prefix, tail },
        })
    }
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum ShapeJson {
    Symmetric,
    Asymmetric,
}

impl From<ShapeJson> for GapShape {
    fn from(s: ShapeJson) -> Self {
        match s {
            ShapeJson::Symmetric => GapShape::Symmetric,
            ShapeJson::Asymmetric => GapShape::ProperAsymmetric,
        }
    }
}

/// `{"eta": "p/D"}` turns the shift-reduced filter on.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct FilterJson {
    pub eta: String,
}

pub fn filter(f: &Option<FilterJson>) -> CliResult<Filter> {
    match f {
        None => Ok(Filter::None),
        Some(f) => Ok(Filter::ShiftReduced(parse_eta(&f.eta)?)),
    }
}

pub fn window(w: &Option<[String; 2]>) -> CliResult<(BigRational, BigRational)> {
    match w {
        None => Ok((BigRational::zero(), BigRational::one())),
        Some([lo, hi]) => Ok((parse_rational(lo)?, parse_rational(hi)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        assert_eq!(
            parse_rational("3/6").unwrap(),
            BigRational::new(1.into(), 2.into())
        );
        assert_eq!(
            parse_rational("-0.25").unwrap(),
            BigRational::new((-1).into(), 4.into())
        );
        assert_eq!(
            parse_rational("7").unwrap(),
            BigRational::from_integer(7.into())
        );
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn spec_forms() {
        let s: RealSpecJson =
            parse_json(r#"{"surd": {"a": "0", "b": "1", "D": 2}}"#, "alpha").unwrap();
        assert!(!s.to_spec().unwrap().is_rational());
        let c: RealSpecJson = parse_json(r#"{"cf": [0, 1, "2"]}"#, "alpha").unwrap();
        assert_eq!(
            c.to_spec().unwrap().as_rational(),
            Some(parse_rational("2/3").unwrap())
        );
        let r: RealSpecJson = parse_json(r#"{"cf_rule": "golden"}"#, "alpha").unwrap();
        assert!(matches!(r.to_spec().unwrap(), RealSpec::Stream(_)));
    }

    #[test]
    fn schema_path_is_reported() {
        let e =
            parse_json::<RealSpecJson>(r#"{"surd": {"a": "0", "b": "1", "D": "two"}}"#, "alpha")
                .unwrap_err();
        match e {
            CliError::Schema { path, .. } => assert_eq!(path, "surd.D"),
            other => panic!("{other:?}"),
        }
    }
}
