use clap::{Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use diophlab_core::sums::{
    dyadic_grid, dyadic_ratio_check, figure1, figure1_alphas, gallagher_counter, log_avg_sum,
    max_log, GallagherReport, LogAvgSum, SumMode,
};
use diophlab_core::{BigRational, RealSpec};

use crate::config::RunConfig;
use crate::emit::{enclosure_json, float, rational_string, Output, Table};
use crate::error::{CliError, CliResult};
use crate::input::{parse_rational, read_json_arg, real_specs, PsiJson, RealSpecJson};

#[derive(Debug, Subcommand)]
pub enum SumsCommand {
    /// S(N) = Σ_{n<=N} 1/(n Π‖nα_i‖) with the fit c (log N)^3, c = S(H)/(log H)^3.
    /// Writes the table (default figure1.csv), a gnuplot script beside it
    /// and prints the summary {H, c}.
    Figure1 {
        #[arg(long = "H", default_value_t = 1_000_000)]
        h: u64,
        /// Keep every stride-th N (and N = H).
        #[arg(long, default_value_t = 100)]
        stride: u64,
        /// JSON list of α specs; the two published decimals by default.
        #[arg(long)]
        alphas: Option<String>,
    },
    /// Σ_{n<=N} 1/(n Π‖nα_i − γ_i‖) in float mode with an error bound, or
    /// as an exact enclosure.
    LogAvg {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        alphas: Option<String>,
        #[arg(long)]
        gammas: Option<String>,
        #[arg(long, value_enum, default_value_t = ModeArg::Float)]
        mode: ModeArg,
    },
    /// Per grid point α_k, the number of n <= N with Π‖nα_i − γ_i‖ < ψ(n).
    Gallagher {
        /// {"alphas": [...], "gammas": [...], "psi": {...}, "grid": "dyadic" | ["p/q", ...], "n_max": N}
        #[arg(long)]
        params: String,
    },
    /// Σ_{C^J0 <= n <= N} h(n)(log n)^κ against Σ_j j^κ C^j h(C^j).
    Dyadic {
        #[arg(long, value_enum)]
        h: HArg,
        #[arg(long, default_value_t = 2)]
        c: u64,
        #[arg(long, default_value_t = 1.0)]
        kappa: f64,
        #[arg(long, default_value_t = 1)]
        j0: u32,
        #[arg(long)]
        n: u64,
    },
}

impl SumsCommand {
    pub fn name(&self) -> &'static str {
        match self {
            SumsCommand::Figure1 { .. } => "figure1",
            SumsCommand::LogAvg { .. } => "log-avg",
            SumsCommand::Gallagher { .. } => "gallagher",
            SumsCommand::Dyadic { .. } => "dyadic",
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    Float,
    Exact,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum HArg {
    /// h(n) = 1.
    One,
    /// h(n) = 1/n.
    Reciprocal,
    /// h(n) = 1/(n (log n)^2).
    ReciprocalLogSquare,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum GridJson {
    Named(String),
    Points(Vec<String>),
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GallagherJson {
    #[serde(default)]
    pub alphas: Vec<RealSpecJson>,
    #[serde(default)]
    pub gammas: Vec<RealSpecJson>,
    pub psi: PsiJson,
    pub grid: GridJson,
    pub n_max: u64,
}

/// Largest `N` accepted by the counter, per grid point.
const GALLAGHER_N_BUDGET: u64 = 10_000_000;

pub fn gnuplot_script(csv_name: &str, k: usize) -> String {
    format!(
        "set datafile separator ','\n\
         set key left top\n\
         set xlabel 'N'\n\
         set ylabel 'S(N)'\n\
         plot '{csv_name}' using 1:2 skip 1 with lines title 'S(N)', \\\n     \
         '' using 1:3 skip 1 with lines title 'c (log N)^{k}'\n"
    )
}

/// Runs the counter in chunks of the grid, in parallel; the result does
/// not depend on the split.
pub fn gallagher_parallel(
    alphas: &[RealSpec],
    gammas: &[RealSpec],
    psi: &diophlab_core::sums::ApproxFunction,
    grid: &[BigRational],
    n_max: u64,
) -> diophlab_core::Result<GallagherReport> {
    const CHUNK: usize = 16;
    let parts: Vec<GallagherReport> = grid
        .par_chunks(CHUNK)
        .map(|g| gallagher_counter(alphas, gammas, psi, g, n_max))
        .collect::<diophlab_core::Result<_>>()?;
    let mut counts = Vec::with_capacity(grid.len());
    let mut undecided = Vec::new();
    for (i, p) in parts.into_iter().enumerate() {
        undecided.extend(p.undecided.into_iter().map(|(n, g)| (n, g + i * CHUNK)));
        counts.extend(p.counts);
    }
    let frac =
        |t: u64| counts.iter().filter(|&&c| c >= t).count() as f64 / counts.len().max(1) as f64;
    let summary = [frac(1), frac(5), frac(25)];
    Ok(GallagherReport {
        n_max,
        counts,
        undecided,
        summary,
    })
}

fn alphas_or_default(a: &Option<String>) -> CliResult<Vec<RealSpec>> {
    match a {
        None => Ok(figure1_alphas()),
        Some(s) => real_specs(&read_json_arg::<Vec<RealSpecJson>>(s, "alphas")?),
    }
}

pub fn run(c: &SumsCommand, cfg: &mut RunConfig) -> CliResult<Output> {
    match c {
        SumsCommand::Figure1 { h, stride, alphas } => {
            cfg.params = json!({"H": h, "stride": stride, "alphas": alphas});
            let al = alphas_or_default(alphas)?;
            let gammas = vec![RealSpec::zero(); al.len()];
            let f = figure1(*h, &al, &gammas, *stride)?;
            let k = al.len() + 1;
            let mut t = Table::new(&["N", "S", "fit"]);
            for r in &f.rows {
                t.push(vec![r.n.to_string(), float(r.s), float(r.fit)]);
            }
            let summary = json!({
                "H": h,
                "c": f.c,
                "exponent": k,
                "S_H": f.s.value,
                "S_H_error_bound": f.s.err,
            });
            let csv_name = cfg
                .out
                .as_ref()
                .and_then(|p| p.file_name())
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_else(|| "figure1.csv".into());
            let mut out = Output::table(t, summary.clone());
            out.default_out = Some("figure1.csv".into());
            out.companions
                .push((".gp".into(), gnuplot_script(&csv_name, k)));
            out.companions.push((
                ".summary.json".into(),
                format!(
                    "{}\n",
                    serde_json::to_string_pretty(&summary).expect("json")
                ),
            ));
            Ok(out)
        }
        SumsCommand::LogAvg {
            n,
            alphas,
            gammas,
            mode,
        } => {
            cfg.params = json!({"n": n, "alphas": alphas, "gammas": gammas, "mode": format!("{mode:?}").to_lowercase()});
            let al = alphas_or_default(alphas)?;
            let ga = match gammas {
                None => vec![RealSpec::zero(); al.len()],
                Some(s) => real_specs(&read_json_arg::<Vec<RealSpecJson>>(s, "gammas")?)?,
            };
            let m = match mode {
                ModeArg::Float => SumMode::Float,
                ModeArg::Exact => SumMode::ExactSpotcheck,
            };
            Ok(Output::summary(match log_avg_sum(*n, &al, &ga, m)? {
                LogAvgSum::Float(s) => {
                    json!({"mode": "float", "value": s.value, "error_bound": s.err, "infinite": s.infinite})
                }
                LogAvgSum::Exact(Some(e)) => {
                    json!({"mode": "exact", "enclosure": enclosure_json(&e, 20)})
                }
                LogAvgSum::Exact(None) => json!({"mode": "exact", "infinite": true}),
            }))
        }
        SumsCommand::Gallagher { params } => {
            let j: GallagherJson = read_json_arg(params, "params")?;
            cfg.params = serde_json::to_value(&j).expect("serialises");
            if j.n_max == 0 || j.n_max > GALLAGHER_N_BUDGET {
                return Err(CliError::usage(format!(
                    "n_max must lie in [1, {GALLAGHER_N_BUDGET}]"
                )));
            }
            let alphas = real_specs(&j.alphas)?;
            let gammas = if j.gammas.is_empty() {
                vec![RealSpec::zero(); alphas.len() + 1]
            } else {
                real_specs(&j.gammas)?
            };
            let grid = match &j.grid {
                GridJson::Named(s) if s == "dyadic" => dyadic_grid(),
                GridJson::Named(s) => return Err(CliError::usage(format!("unknown grid {s:?}"))),
                GridJson::Points(p) => p
                    .iter()
                    .map(|s| parse_rational(s))
                    .collect::<CliResult<_>>()?,
            };
            let psi = j.psi.to_function()?;
            let r = gallagher_parallel(&alphas, &gammas, &psi, &grid, j.n_max)?;
            let mut t = Table::new(&["index", "alpha_k", "count"]);
            for (i, (a, c)) in grid.iter().zip(&r.counts).enumerate() {
                t.push(vec![i.to_string(), rational_string(a), c.to_string()]);
            }
            Ok(Output::table(
                t,
                json!({
                    "n_max": j.n_max,
                    "grid_points": grid.len(),
                    "total": r.counts.iter().sum::<u64>(),
                    "fraction_at_least": {"1": r.summary[0], "5": r.summary[1], "25": r.summary[2]},
                    "undecided": r.undecided.len(),
                }),
            ))
        }
        SumsCommand::Dyadic { h, c, kappa, j0, n } => {
            cfg.params = json!({"h": format!("{h:?}"), "c": c, "kappa": kappa, "j0": j0, "n": n});
            if *n == 0 || *n > 100_000_000 {
                return Err(CliError::usage("n must lie in [1, 10^8]"));
            }
            let table: Vec<f64> = (1..=*n)
                .map(|m| {
                    let x = m as f64;
                    match h {
                        HArg::One => 1.0,
                        HArg::Reciprocal => 1.0 / x,
                        HArg::ReciprocalLogSquare => {
                            let l = max_log(x).expect("positive");
                            1.0 / (x * l * l)
                        }
                    }
                })
                .collect();
            let r = dyadic_ratio_check(&table, *c, *kappa, *j0, *n)?;
            Ok(Output::summary(json!({
                "lhs": r.lhs,
                "rhs": r.rhs,
                "ratio": r.ratio,
                "J": r.j,
                "band": [r.band.0, r.band.1],
                "in_band": r.in_band(),
            })))
        }
    }
}
