use clap::Subcommand;
use serde::{Deserialize, Serialize};
use serde_json::json;

use diophlab_core::bohr::{
    bohr_cardinality_check, count_divisible_in_gap, davenport_check, davenport_constant,
    enumerate_bohr, enumerate_gap, enumerate_localised_bohr, lattice_basis, verify_containment,
    BohrParams, Direction, Gap,
};

use crate::config::RunConfig;
use crate::emit::{float, rational_string, Output, Table};
use crate::error::{CliError, CliResult};
use crate::input::{parse_rational, read_json_arg, real_specs, RealSpecJson, ShapeJson};

#[derive(Debug, Subcommand)]
pub enum BohrCommand {
    /// Members of {|n| <= N : ‖nα_i − γ_i‖ <= ρ_i for all i}.
    Enum {
        /// {"alpha": [...], "gamma": [...], "n": N, "rho": ["p/q", ...],
        /// "localised": {"c": C, "hat_power": f}} (gamma, localised optional).
        #[arg(long)]
        params: String,
    },
    /// δN − 1 <= #B <= 32δN for the homogeneous set, when some convergent
    /// denominator lies in [1/(2δ), N].
    CardCheck {
        /// {"alpha": spec, "delta": "p/q", "n": N}
        #[arg(long)]
        params: String,
    },
    /// Members of a generalised arithmetic progression, properness, and
    /// optional containment against a Bohr set.
    GapEnum {
        /// {"b": b, "a": [...], "n": [...], "shape": "symmetric"|"asymmetric",
        /// "bohr": {...}, "direction": "gap_in_bohr"|"bohr_in_gap"}.
        #[arg(long)]
        params: String,
    },
    /// Members of a proper asymmetric progression divisible by d.
    DivCount {
        /// {"b": b, "a": [...], "n": [...], "d": d}
        #[arg(long)]
        params: String,
    },
    /// Lattice points of {n : A·n ≡ 0 mod d} in a box against vol/det.
    Davenport {
        /// {"a": [...], "d": d, "box": [["lo", "hi"], ...]}
        #[arg(long)]
        params: String,
    },
}

impl BohrCommand {
    pub fn name(&self) -> &'static str {
        match self {
            BohrCommand::Enum { .. } => "enum",
            BohrCommand::CardCheck { .. } => "card-check",
            BohrCommand::GapEnum { .. } => "gap-enum",
            BohrCommand::DivCount { .. } => "div-count",
            BohrCommand::Davenport { .. } => "davenport",
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct LocalisedJson {
    pub c: u64,
    /// `n̂ = 4^f n` with constant `f`.
    #[serde(default)]
    pub hat_power: u32,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct BohrJson {
    pub alpha: Vec<RealSpecJson>,
    #[serde(default)]
    pub gamma: Option<Vec<RealSpecJson>>,
    pub n: u64,
    pub rho: Vec<String>,
    #[serde(default)]
    pub localised: Option<LocalisedJson>,
}

impl BohrJson {
    fn params(&self) -> CliResult<BohrParams> {
        let alpha = real_specs(&self.alpha)?;
        let gamma = match &self.gamma {
            Some(g) => real_specs(g)?,
            None => vec![diophlab_core::RealSpec::zero(); alpha.len()],
        };
        let rho = self
            .rho
            .iter()
            .map(|r| parse_rational(r))
            .collect::<CliResult<_>>()?;
        Ok(BohrParams::new(alpha, gamma, self.n, rho)?)
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct CardJson {
    alpha: RealSpecJson,
    delta: String,
    n: u64,
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
enum DirectionJson {
    GapInBohr,
    BohrInGap,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct GapJson {
    #[serde(default)]
    b: i64,
    a: Vec<i64>,
    n: Vec<u64>,
    #[serde(default = "default_shape")]
    shape: ShapeJson,
    #[serde(default)]
    bohr: Option<BohrJson>,
    #[serde(default)]
    direction: Option<DirectionJson>,
    #[serde(default)]
    d: Option<u64>,
}

fn default_shape() -> ShapeJson {
    ShapeJson::Asymmetric
}

impl GapJson {
    fn gap(&self) -> CliResult<Gap> {
        Ok(Gap::new(
            self.b,
            self.a.clone(),
            self.n.clone(),
            self.shape.into(),
        )?)
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct DavenportJson {
    a: Vec<i64>,
    d: i64,
    #[serde(rename = "box")]
    bx: Vec<[String; 2]>,
}

pub fn run(c: &BohrCommand, cfg: &mut RunConfig) -> CliResult<Output> {
    let budget = cfg.budget()?;
    match c {
        BohrCommand::Enum { params } => {
            let j: BohrJson = read_json_arg(params, "params")?;
            cfg.params = serde_json::to_value(&j).expect("serialises");
            let p = j.params()?;
            let members = match &j.localised {
                None => enumerate_bohr(&p, &budget)?,
                Some(l) => {
                    let f = 4u64
                        .checked_pow(l.hat_power)
                        .ok_or_else(|| CliError::usage("hat_power too large"))?;
                    let hat = move |n: u64| n.saturating_mul(f);
                    enumerate_localised_bohr(&p.alpha, &p.gamma, p.n, l.c, &p.rho, &hat, &budget)?
                        .into_iter()
                        .map(|m| m as i64)
                        .collect()
                }
            };
            let mut t = Table::new(&["n"]);
            for m in &members {
                t.push(vec![m.to_string()]);
            }
            Ok(Output::table(t, json!({"count": members.len()})))
        }
        BohrCommand::CardCheck { params } => {
            let j: CardJson = read_json_arg(params, "params")?;
            cfg.params = serde_json::to_value(&j).expect("serialises");
            let r = bohr_cardinality_check(
                &j.alpha.to_spec()?,
                &parse_rational(&j.delta)?,
                j.n,
                &budget,
            )?;
            let mut t = Table::new(&[
                "count",
                "lower",
                "upper",
                "hypothesis_met",
                "bounds_hold",
                "witness_q",
            ]);
            t.push(vec![
                r.count.to_string(),
                rational_string(&r.lower),
                rational_string(&r.upper),
                r.hypothesis_met.to_string(),
                r.bounds_hold().to_string(),
                r.witness
                    .as_ref()
                    .map(|w| w.to_string())
                    .unwrap_or_default(),
            ]);
            Ok(Output::table(
                t,
                json!({"hypothesis_met": r.hypothesis_met, "bounds_hold": r.bounds_hold()}),
            ))
        }
        BohrCommand::GapEnum { params } => {
            let j: GapJson = read_json_arg(params, "params")?;
            cfg.params = serde_json::to_value(&j).expect("serialises");
            let g = j.gap()?;
            let e = enumerate_gap(&g)?;
            let mut summary =
                json!({"members": e.members.len(), "proper": e.proper, "collisions": e.collisions});
            if let Some(b) = &j.bohr {
                let dir = match j.direction.unwrap_or(DirectionJson::GapInBohr) {
                    DirectionJson::GapInBohr => Direction::GapInBohr,
                    DirectionJson::BohrInGap => Direction::BohrInGap,
                };
                let r = verify_containment(&b.params()?, &g, dir, &budget)?;
                summary["containment"] =
                    json!({"holds": r.holds, "counterexamples": r.counterexamples});
            }
            let mut t = Table::new(&["n"]);
            for m in e.distinct() {
                t.push(vec![m.to_string()]);
            }
            Ok(Output::table(t, summary))
        }
        BohrCommand::DivCount { params } => {
            let j: GapJson = read_json_arg(params, "params")?;
            cfg.params = serde_json::to_value(&j).expect("serialises");
            let d =
                j.d.ok_or_else(|| CliError::usage("div-count needs \"d\""))?;
            let r = count_divisible_in_gap(&j.gap()?, d)?;
            let mut t = Table::new(&["count", "main_term", "defect", "scale"]);
            t.push(vec![
                r.count.to_string(),
                rational_string(&r.main_term),
                rational_string(&r.defect),
                rational_string(&r.scale),
            ]);
            Ok(Output::table(t, json!({"within_4": r.within(4)})))
        }
        BohrCommand::Davenport { params } => {
            let j: DavenportJson = read_json_arg(params, "params")?;
            cfg.params = serde_json::to_value(&j).expect("serialises");
            let l = lattice_basis(&j.a, j.d)?;
            let boxes =
                j.bx.iter()
                    .map(|[lo, hi]| Ok((parse_rational(lo)?, parse_rational(hi)?)))
                    .collect::<CliResult<Vec<_>>>()?;
            let r = davenport_check(&boxes, &l)?;
            let mut t = Table::new(&["count", "vol_over_det", "error", "bound", "holds"]);
            t.push(vec![
                r.count.to_string(),
                rational_string(&r.vol_over_det),
                rational_string(&r.error),
                float(r.bound),
                r.holds().to_string(),
            ]);
            Ok(Output::table(
                t,
                json!({
                    "basis": l.basis,
                    "det": l.det(),
                    "constant": davenport_constant(l.rank()),
                    "minima": r.minima.iter().map(|&x| float(x)).collect::<Vec<_>>(),
                    "holds": r.holds(),
                }),
            ))
        }
    }
}
