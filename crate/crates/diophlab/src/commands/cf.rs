use clap::Subcommand;
use serde_json::json;

use diophlab_core::contfrac::{
    convergents, d_value_with_budget, evaluate, omega_estimate, ContinuedFraction,
};
use diophlab_core::numbers::pow10_inv;
use diophlab_core::{BigRational, Enclosure, Error as CoreError};

use crate::config::RunConfig;
use crate::emit::{enclosure_cells, float, Output, Table};
use crate::error::CliResult;
use crate::input::{read_json_arg, real_spec, IntJson, RealSpecJson};

#[derive(Debug, Subcommand)]
pub enum CfCommand {
    /// Table of j, p_j, q_j and a certified enclosure of D_j = q_j α − p_j.
    Convergents {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        depth: usize,
    },
    /// Finite-depth lower estimate of the growth exponent
    /// limsup log q_{k+1} / log q_k.
    Omega {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        depth: usize,
    },
}

impl CfCommand {
    pub fn name(&self) -> &'static str {
        match self {
            CfCommand::Convergents { .. } => "convergents",
            CfCommand::Omega { .. } => "omega",
        }
    }
}

/// A quotient list is tabulated as written (a trailing 1 is not folded),
/// with `D_j` exact.
fn literal_convergents(v: &[IntJson], depth: usize) -> CliResult<Output> {
    let q = v
        .iter()
        .map(IntJson::to_bigint)
        .collect::<CliResult<Vec<_>>>()?;
    let alpha = evaluate(&ContinuedFraction::exact(q.clone())?)?;
    let reached = depth.min(q.len() - 1);
    let t = convergents(&ContinuedFraction::prefix(q)?, reached)?;
    let mut table = Table::new(&["j", "p_j", "q_j", "D_j_lo", "D_j_hi"]);
    for j in 0..=reached {
        let d = Enclosure::point(
            &alpha * BigRational::from_integer(t.q[j].clone())
                - BigRational::from_integer(t.p[j].clone()),
        );
        let (lo, hi) = enclosure_cells(&d, 20);
        table.push(vec![
            j.to_string(),
            t.p[j].to_string(),
            t.q[j].to_string(),
            lo,
            hi,
        ]);
    }
    Ok(Output::table(
        table,
        json!({
            "rows": reached + 1,
            "requested_depth": depth,
            "truncated": reached < depth,
            "note": if reached < depth { "finite expansion ends before the requested depth" } else { "" },
        }),
    ))
}

pub fn run(c: &CfCommand, cfg: &mut RunConfig) -> CliResult<Output> {
    let budget = cfg.budget()?;
    match c {
        CfCommand::Convergents { alpha, depth } => {
            cfg.params = json!({"alpha": alpha, "depth": depth});
            let j_alpha: RealSpecJson = read_json_arg(alpha, "alpha")?;
            if let RealSpecJson::Cf(v) = &j_alpha {
                return literal_convergents(v, *depth);
            }
            let a = j_alpha.to_spec()?;
            let cf = a.continued_fraction();
            // a finite expansion stops at its last quotient
            let reached = cf.last_index().map_or(*depth, |l| l.min(*depth));
            let t = convergents(&cf, reached)?;
            let mut table = Table::new(&["j", "p_j", "q_j", "D_j_lo", "D_j_hi"]);
            for j in 0..=reached {
                let d = match d_value_with_budget(&cf, &a, j, &pow10_inv(30), &budget) {
                    Ok(d) => d.value,
                    Err(CoreError::DepthExceeded { .. }) => break,
                    Err(e) => return Err(e.into()),
                };
                let (lo, hi) = enclosure_cells(&d, 20);
                table.push(vec![
                    j.to_string(),
                    t.p[j].to_string(),
                    t.q[j].to_string(),
                    lo,
                    hi,
                ]);
            }
            let rows = table.rows.len();
            Ok(Output::table(
                table,
                json!({
                    "rows": rows,
                    "requested_depth": depth,
                    "truncated": reached < *depth,
                    "note": if reached < *depth { "finite expansion ends before the requested depth" } else { "" },
                }),
            ))
        }
        CfCommand::Omega { alpha, depth } => {
            cfg.params = json!({"alpha": alpha, "depth": depth});
            let cf = real_spec(alpha, "alpha")?.continued_fraction();
            let w = omega_estimate(&cf, *depth)?;
            Ok(Output::summary(json!({
                "omega": float(diophlab_core::numbers::to_f64(&w)),
                "label": format!("lower estimate at depth {depth}"),
            })))
        }
    }
}
