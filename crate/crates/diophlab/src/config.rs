//! Run configuration shared by all subcommands.

use std::path::PathBuf;

use serde::Serialize;

use diophlab_core::numbers::Budget;

use crate::emit::Format;
use crate::error::{CliError, CliResult};

pub const BUDGET_ENV: &str = "DIOPHLAB_BUDGET";
pub const DEFAULT_BUDGET: u32 = 8;
pub const DEFAULT_SEED: u64 = 20_240_601;

/// Everything needed to reproduce a run. Echoed into every summary.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: Vec<String>,
    pub params: serde_json::Value,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub refinement_budget: u32,
    pub random_seed: u64,
}

impl RunConfig {
    pub fn budget(&self) -> CliResult<Budget> {
        Ok(Budget::new(self.refinement_budget)?)
    }
}

/// The budget flag, overridden by `DIOPHLAB_BUDGET` when set.
pub fn resolve_budget(flag: Option<u32>) -> CliResult<u32> {
    let b = match std::env::var(BUDGET_ENV) {
        Ok(v) => v.trim().parse::<u32>().map_err(|_| {
            CliError::usage(format!(
                "{BUDGET_ENV} must be a positive integer, got {v:?}"
            ))
        })?,
        Err(_) => flag.unwrap_or(DEFAULT_BUDGET),
    };
    if b == 0 {
        return Err(CliError::usage("refinement budget must be positive"));
    }
    Ok(b)
}
