use clap::Subcommand;
use serde::{Deserialize, Serialize};
use serde_json::json;

use diophlab_core::measure::{
    divergence_sum, overlap_matrix_sum, ApproxSet, Family, PsiValue, OVERLAP_BUDGET,
};
use diophlab_core::RealSpec;

use crate::config::RunConfig;
use crate::emit::{enclosure_cells, enclosure_json, Output, Table};
use crate::error::{CliError, CliResult};
use crate::input::{filter, read_json_arg, real_specs, window, FilterJson, PsiJson, RealSpecJson};

#[derive(Debug, Subcommand)]
pub enum MeasureCommand {
    /// Per-n rows n, n̂, μ(E_n), Ψ(n), ψ(n̂) and the divergence sums.
    Sets {
        /// JSON: {"psi": .., "x": n, "alphas": [..], "gammas": [..], "gamma": spec,
        /// "window": ["lo", "hi"], "filter": {"eta": "p/D"}, "hat_power": f}
        #[arg(long)]
        params: String,
    },
    /// (Σ μ(E_n))² / Σ_{m,n} μ(E_n ∩ E_m) over n <= x.
    Bc {
        /// JSON: {"psi": .., "x": n, "alphas": [..], "gammas": [..], "gamma": spec,
        /// "window": ["lo", "hi"], "filter": {"eta": "p/D"}, "hat_power": f}
        #[arg(long)]
        params: String,
    },
}

impl MeasureCommand {
    pub fn name(&self) -> &'static str {
        match self {
            MeasureCommand::Sets { .. } => "sets",
            MeasureCommand::Bc { .. } => "bc",
        }
    }
}

/// `E_n` for `n <= x` with `Ψ(n) = ψ(n̂) / Π ‖n̂α_i − γ_i‖`, `n̂ = 4^f n`.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyJson {
    #[serde(default)]
    pub alphas: Vec<RealSpecJson>,
    #[serde(default)]
    pub gammas: Vec<RealSpecJson>,
    #[serde(default)]
    pub gamma: Option<RealSpecJson>,
    #[serde(default)]
    pub window: Option<[String; 2]>,
    #[serde(default)]
    pub filter: Option<FilterJson>,
    pub psi: PsiJson,
    pub x: u64,
    #[serde(default)]
    pub hat_power: u32,
}

struct Built {
    sets: Vec<(ApproxSet, PsiValue)>,
    divergence: diophlab_core::measure::DivergenceReport,
}

fn build(j: &FamilyJson) -> CliResult<Built> {
    if j.x == 0 || j.x as usize > OVERLAP_BUDGET {
        return Err(CliError::usage(format!(
            "x must lie in [1, {OVERLAP_BUDGET}]"
        )));
    }
    let alphas = real_specs(&j.alphas)?;
    let gammas = if j.gammas.is_empty() {
        vec![RealSpec::zero(); alphas.len()]
    } else {
        real_specs(&j.gammas)?
    };
    if gammas.len() != alphas.len() {
        return Err(CliError::usage("alphas and gammas need equal lengths"));
    }
    let f = 4u64
        .checked_pow(j.hat_power)
        .ok_or_else(|| CliError::usage("hat_power too large"))?;
    let psi = j.psi.to_function()?;
    let hat = move |n: u64| n.saturating_mul(f);
    let psi_fn = |n: u64| psi.eval(n);
    let family = Family {
        alphas,
        gammas,
        gamma: match &j.gamma {
            Some(g) => g.to_spec()?,
            None => RealSpec::zero(),
        },
        window: window(&j.window)?,
        filter: filter(&j.filter)?,
        hat: &hat,
        psi: &psi_fn,
    };
    let sets = family.sets(j.x)?;
    let divergence = divergence_sum(&family, &sets)?;
    Ok(Built { sets, divergence })
}

fn psi_cells(p: &PsiValue) -> (String, String) {
    match p {
        PsiValue::Exact(r) => enclosure_cells(&r.clone().into(), 20),
        PsiValue::Enclosed(e) => enclosure_cells(e, 20),
        PsiValue::Infinite => ("inf".into(), "inf".into()),
    }
}

pub fn run(c: &MeasureCommand, cfg: &mut RunConfig) -> CliResult<Output> {
    match c {
        MeasureCommand::Sets { params } => {
            let j: FamilyJson = read_json_arg(params, "params")?;
            cfg.params = serde_json::to_value(&j).expect("serialises");
            let b = build(&j)?;
            let f = 4u64.pow(j.hat_power);
            let psi = j.psi.to_function()?;
            let mut t = Table::new(&[
                "n",
                "hat_n",
                "mu_lo",
                "mu_hi",
                "big_psi_lo",
                "big_psi_hi",
                "psi_hat_lo",
                "psi_hat_hi",
            ]);
            for (i, (set, big)) in b.sets.iter().enumerate() {
                let n = i as u64 + 1;
                let (ml, mh) = enclosure_cells(&set.measure(), 20);
                let (pl, ph) = psi_cells(big);
                let (sl, sh) = enclosure_cells(&psi.eval(n * f)?, 20);
                t.push(vec![
                    n.to_string(),
                    (n * f).to_string(),
                    ml,
                    mh,
                    pl,
                    ph,
                    sl,
                    sh,
                ]);
            }
            Ok(Output::table(
                t,
                json!({
                    "sum_measure": enclosure_json(&b.divergence.sum_measure, 12),
                    "sum_main": enclosure_json(&b.divergence.sum_main, 12),
                    "ratio": b.divergence.ratio.as_ref().map(|r| enclosure_json(r, 12)),
                }),
            ))
        }
        MeasureCommand::Bc { params } => {
            let j: FamilyJson = read_json_arg(params, "params")?;
            cfg.params = serde_json::to_value(&j).expect("serialises");
            let b = build(&j)?;
            let sets: Vec<ApproxSet> = b.sets.into_iter().map(|s| s.0).collect();
            let r = overlap_matrix_sum(&sets)?;
            Ok(Output::summary(json!({
                "x": j.x,
                "sum_measure": enclosure_json(&r.sum_measure, 12),
                "sum_overlap": enclosure_json(&r.sum_overlap, 12),
                "bc_ratio": r.bc_ratio.as_ref().map(|e| enclosure_json(e, 12)),
                "divergence_ratio": b.divergence.ratio.as_ref().map(|e| enclosure_json(e, 12)),
            })))
        }
    }
}
