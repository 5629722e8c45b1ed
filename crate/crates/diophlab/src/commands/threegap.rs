use clap::Args;
use serde_json::json;

use diophlab_core::numbers::pow10_inv;
use diophlab_core::threegap::{brute_gaps, find_small_shift, gap_decomposition, largest_gap};
use diophlab_core::RealSpec;

use crate::config::RunConfig;
use crate::emit::{enclosure_json, Output};
use crate::error::{CliError, CliResult};
use crate::input::real_spec;

#[derive(Debug, Args)]
pub struct ThreegapArgs {
    #[arg(long)]
    pub alpha: String,
    #[arg(long)]
    pub m: u64,
    /// Enclosure widths are at most 10^-digits.
    #[arg(long, default_value_t = 30)]
    pub width_digits: u32,
    /// Also locate b <= q_t with ‖bα − γ‖ <= 2/q_t for this shift.
    #[arg(long, requires = "t")]
    pub gamma: Option<String>,
    #[arg(long)]
    pub t: Option<usize>,
}

pub fn run(a: &ThreegapArgs, cfg: &mut RunConfig) -> CliResult<Output> {
    cfg.params = json!({"alpha": a.alpha, "m": a.m, "width_digits": a.width_digits, "gamma": a.gamma, "t": a.t});
    let alpha = real_spec(&a.alpha, "alpha")?;
    let cf = alpha.continued_fraction();
    let width = pow10_inv(a.width_digits);
    let brute = brute_gaps(a.m, &alpha, &width)?;
    let mut summary = json!({
        "m": a.m,
        "oracle_gap": enclosure_json(brute.max(), 25),
        "distinct_gaps": brute.distinct.len(),
    });
    if !alpha.is_rational() {
        let d = gap_decomposition(a.m, &cf)?;
        let f = largest_gap(a.m, &alpha, &cf, &width)?;
        summary["decomposition"] = json!({"k": d.k, "r": d.r.to_string(), "s": d.s.to_string()});
        summary["formula_gap"] = enclosure_json(&f, 25);
        summary["agree"] = json!(f.intersects(brute.max()));
    }
    if let (Some(g), Some(t)) = (&a.gamma, a.t) {
        if matches!(alpha, RealSpec::Rational(_)) {
            return Err(CliError::usage("--gamma needs an irrational alpha"));
        }
        let gamma = real_spec(g, "gamma")?;
        let s = find_small_shift(t, &cf, &gamma)?;
        summary["small_shift"] =
            json!({"t": t, "q_t": s.q_t, "b": s.b, "distance": enclosure_json(&s.distance, 20)});
    }
    Ok(Output::summary(summary))
}
