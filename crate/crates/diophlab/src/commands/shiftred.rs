use clap::Subcommand;
use serde_json::json;

use diophlab_core::shiftred::{totient, Anchors};

use crate::config::RunConfig;
use crate::emit::{Output, Table};
use crate::error::{CliError, CliResult};
use crate::input::{parse_eta, real_spec};

#[derive(Debug, Subcommand)]
pub enum ShiftredCommand {
    /// Rows n, φ(n), φ_{γ,η}(n), q_t, c_t for 1 <= n <= n-max, where
    /// c_t/q_t is the last convergent of γ with q_t <= n^η.
    Phi {
        #[arg(long)]
        gamma: String,
        /// η = p/D in (0, 1).
        #[arg(long)]
        eta: String,
        #[arg(long)]
        n_max: u64,
    },
    /// Whether gcd(q_t a + c_t, n) = 1.
    Check {
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        eta: String,
        #[arg(long)]
        n: u64,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
    },
}

impl ShiftredCommand {
    pub fn name(&self) -> &'static str {
        match self {
            ShiftredCommand::Phi { .. } => "phi",
            ShiftredCommand::Check { .. } => "check",
        }
    }
}

/// Rows beyond this are refused: each costs `O(n)` gcds.
const PHI_ROWS: u64 = 200_000;

pub fn run(c: &ShiftredCommand, cfg: &mut RunConfig) -> CliResult<Output> {
    match c {
        ShiftredCommand::Phi { gamma, eta, n_max } => {
            cfg.params = json!({"gamma": gamma, "eta": eta, "n_max": n_max});
            if *n_max == 0 || *n_max > PHI_ROWS {
                return Err(CliError::usage(format!(
                    "n-max must lie in [1, {PHI_ROWS}]"
                )));
            }
            let e = parse_eta(eta)?;
            let mut anchors = Anchors::new(&real_spec(gamma, "gamma")?)?;
            let mut t = Table::new(&["n", "phi", "phi_shift", "q_t", "c_t"]);
            let mut below = 0u64;
            for n in 1..=*n_max {
                let a = anchors.anchor(e, n)?;
                let phi = totient(n)?;
                let ps = a.count();
                if ps < phi {
                    below += 1;
                }
                t.push(vec![
                    n.to_string(),
                    phi.to_string(),
                    ps.to_string(),
                    a.q_t.to_string(),
                    a.c_t.to_string(),
                ]);
            }
            Ok(Output::table(
                t,
                json!({"rows": n_max, "rows_with_phi_shift_below_phi": below}),
            ))
        }
        ShiftredCommand::Check { gamma, eta, n, a } => {
            cfg.params = json!({"gamma": gamma, "eta": eta, "n": n, "a": a});
            let anchor = Anchors::new(&real_spec(gamma, "gamma")?)?.anchor(parse_eta(eta)?, *n)?;
            Ok(Output::summary(json!({
                "shift_reduced": anchor.is_reduced(*a),
                "t": anchor.t,
                "q_t": anchor.q_t.to_string(),
                "c_t": anchor.c_t.to_string(),
            })))
        }
    }
}
