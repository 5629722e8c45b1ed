use clap::Subcommand;
use num_bigint::BigUint;
use serde_json::json;

use diophlab_core::numbers::pow10_inv;
use diophlab_core::ostrowski::{
    certify_pair, check_gap_pattern, cylinder_elements, cylinder_up_to, decode_with, encode_with,
    sud_partial_sum, OstrowskiDigits, Scale, SigmaEngine, SudBranch,
};

use crate::commands::parse_digits;
use crate::config::RunConfig;
use crate::emit::{enclosure_cells, enclosure_json, float, rational_string, Output, Table};
use crate::error::{CliError, CliResult};
use crate::input::{read_json_arg, real_spec, PairJson};

#[derive(Debug, Subcommand)]
pub enum OstrowskiCommand {
    /// Digits c_1, c_2, ... of n = Σ c_{k+1} q_k.
    Encode {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        n: BigUint,
    },
    /// Value of a digit string, after checking the digit rules.
    Decode {
        #[arg(long)]
        alpha: String,
        /// Comma separated c_1,c_2,...
        #[arg(long)]
        digits: String,
    },
    /// Elements of the cylinder of integers with prescribed leading digits.
    Cylinder {
        #[arg(long)]
        alpha: String,
        /// Comma separated d_1,...,d_{m+1}.
        #[arg(long)]
        prefix: String,
        /// Number of elements; ignored when --up-to is given.
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long)]
        up_to: Option<BigUint>,
    },
    /// Checks the gap pattern of a cylinder up to a bound.
    Gaps {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        prefix: String,
        #[arg(long)]
        up_to: BigUint,
    },
    /// Certifies 0 < α < 1/64 and 0 <= γ < 1 − α for a pair.
    Pair {
        /// Pair JSON: {"alpha_cf": ..., "b_prefix": [...], "b_tail_rule": ...}
        /// or {"construct": {"sigma": [...], "schedule": "factorial"|"relaxed", "depth": n}}.
        #[arg(long)]
        pair: String,
    },
    /// ‖nα − γ‖ through the digit differences, beside the direct value.
    Sigma {
        #[arg(long)]
        pair: String,
        #[arg(long)]
        n_max: u64,
        #[arg(long, default_value_t = 1)]
        n_min: u64,
        /// Enclosure widths are at most 10^-digits.
        #[arg(long, default_value_t = 30)]
        width_digits: u32,
    },
    /// Partial sum of 1/(n (log n)^2 ‖nα − γ‖) over the set W_{u,d}.
    Sud {
        #[arg(long)]
        pair: String,
        #[arg(long)]
        u: usize,
        #[arg(long)]
        d: BigUint,
        #[arg(long)]
        n_max: BigUint,
    },
}

impl OstrowskiCommand {
    pub fn name(&self) -> &'static str {
        match self {
            OstrowskiCommand::Encode { .. } => "encode",
            OstrowskiCommand::Decode { .. } => "decode",
            OstrowskiCommand::Cylinder { .. } => "cylinder",
            OstrowskiCommand::Gaps { .. } => "gaps",
            OstrowskiCommand::Pair { .. } => "pair",
            OstrowskiCommand::Sigma { .. } => "sigma",
            OstrowskiCommand::Sud { .. } => "sud",
        }
    }
}

fn digit_strings(d: &[BigUint]) -> Vec<String> {
    d.iter().map(|x| x.to_string()).collect()
}

pub fn run(c: &OstrowskiCommand, cfg: &mut RunConfig) -> CliResult<Output> {
    match c {
        OstrowskiCommand::Encode { alpha, n } => {
            cfg.params = json!({"alpha": alpha, "n": n.to_string()});
            let mut s = Scale::new(&real_spec(alpha, "alpha")?.continued_fraction())?;
            let d = encode_with(n, &mut s)?;
            Ok(Output::summary(
                json!({"n": n.to_string(), "digits": digit_strings(&d.digits)}),
            ))
        }
        OstrowskiCommand::Decode { alpha, digits } => {
            cfg.params = json!({"alpha": alpha, "digits": digits});
            let mut s = Scale::new(&real_spec(alpha, "alpha")?.continued_fraction())?;
            let d = OstrowskiDigits {
                digits: parse_digits(digits)?,
            };
            let n = decode_with(&d, &mut s)?;
            Ok(Output::summary(
                json!({"n": n.to_string(), "digits": digit_strings(&d.digits)}),
            ))
        }
        OstrowskiCommand::Cylinder {
            alpha,
            prefix,
            count,
            up_to,
        } => {
            cfg.params = json!({"alpha": alpha, "prefix": prefix, "count": count, "up_to": up_to.as_ref().map(|b| b.to_string())});
            let cf = real_spec(alpha, "alpha")?.continued_fraction();
            let p = parse_digits(prefix)?;
            let elems = match up_to {
                Some(b) => cylinder_up_to(&p, &cf, b)?,
                None => cylinder_elements(&p, &cf, *count)?,
            };
            let mut t = Table::new(&["n", "gap"]);
            for (i, e) in elems.iter().enumerate() {
                let gap = if i == 0 {
                    String::new()
                } else {
                    (e - &elems[i - 1]).to_string()
                };
                t.push(vec![e.to_string(), gap]);
            }
            Ok(Output::table(t, json!({"elements": elems.len()})))
        }
        OstrowskiCommand::Gaps {
            alpha,
            prefix,
            up_to,
        } => {
            cfg.params = json!({"alpha": alpha, "prefix": prefix, "up_to": up_to.to_string()});
            let cf = real_spec(alpha, "alpha")?.continued_fraction();
            let r = check_gap_pattern(&parse_digits(prefix)?, &cf, up_to)?;
            Ok(Output::summary(json!({
                "elements": r.elements,
                "gap_sizes": digit_strings(&r.sizes),
                "pattern_holds": r.holds,
            })))
        }
        OstrowskiCommand::Pair { pair } => {
            let pj: PairJson = read_json_arg(pair, "pair")?;
            cfg.params = serde_json::to_value(&pj).expect("pair serialises");
            let p = pj.to_pair()?;
            let cert = certify_pair(&p)?;
            Ok(Output::summary(json!({
                "certified": true,
                "alpha": enclosure_json(&cert.alpha, 20),
                "gamma": enclosure_json(&cert.gamma, 20),
            })))
        }
        OstrowskiCommand::Sigma {
            pair,
            n_max,
            n_min,
            width_digits,
        } => {
            let pj: PairJson = read_json_arg(pair, "pair")?;
            cfg.params =
                json!({"pair": pj, "n_min": n_min, "n_max": n_max, "width_digits": width_digits});
            if *n_min == 0 || n_min > n_max {
                return Err(CliError::usage("need 1 <= n_min <= n_max"));
            }
            let p = pj.to_pair()?;
            let width = pow10_inv(*width_digits);
            let mut eng = SigmaEngine::new(&p, &width, &BigUint::from(*n_max))?;
            let mut t = Table::new(&[
                "n",
                "m",
                "sigma_lo",
                "sigma_hi",
                "dist_lo",
                "dist_hi",
                "direct_lo",
                "direct_hi",
            ]);
            let mut disagreements = 0u64;
            for n in *n_min..=*n_max {
                let s = eng.decompose(&BigUint::from(n))?;
                if !s.distance.intersects(&s.direct) {
                    disagreements += 1;
                }
                let (a, b) = enclosure_cells(&s.sigma, 20);
                let (c, d) = enclosure_cells(&s.distance, 20);
                let (e, f) = enclosure_cells(&s.direct, 20);
                t.push(vec![n.to_string(), s.m.to_string(), a, b, c, d, e, f]);
            }
            Ok(Output::table(
                t,
                json!({"rows": n_max - n_min + 1, "disagreements": disagreements}),
            ))
        }
        OstrowskiCommand::Sud { pair, u, d, n_max } => {
            let pj: PairJson = read_json_arg(pair, "pair")?;
            cfg.params =
                json!({"pair": pj, "u": u, "d": d.to_string(), "n_max": n_max.to_string()});
            let r = sud_partial_sum(*u, d, &pj.to_pair()?, n_max)?;
            Ok(Output::summary(json!({
                "u": r.u,
                "d": r.d.to_string(),
                "branch": match r.branch {
                    SudBranch::Above => "d > b_{u+1}",
                    SudBranch::Equal => "d = b_{u+1}",
                    SudBranch::Below => "d < b_{u+1}",
                },
                "count": r.count,
                "empty": r.empty,
                "sum": enclosure_json(&r.sum, 20),
                "min_w": r.min_w.map(|x| x.to_string()),
                "min_w_over_q_u": r.min_over_qu.as_ref().map(rational_string),
                "estimate": float(r.estimate),
            })))
        }
    }
}
