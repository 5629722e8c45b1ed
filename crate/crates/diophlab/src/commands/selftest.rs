use clap::Args;
use serde_json::json;

use crate::acceptance::{self, Level, CRITERIA};
use crate::config::RunConfig;
use crate::emit::{Output, Table};
use crate::error::{CliError, CliResult};

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// fast: reduced sizes, under a minute. full: the stated sizes.
    #[arg(long, value_enum, default_value_t = Level::Fast)]
    pub level: Level,
    /// Run only these criteria (1-11); repeat or separate by commas.
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<u8>,
}

pub fn run(a: &SelftestArgs, cfg: &mut RunConfig) -> CliResult<Output> {
    cfg.params = json!({"level": a.level, "only": a.only});
    if let Some(bad) = a
        .only
        .iter()
        .find(|id| !CRITERIA.iter().any(|c| c.0 == **id))
    {
        return Err(CliError::usage(format!("no criterion {bad}")));
    }
    let checks = acceptance::run_all(a.level, &a.only, cfg.random_seed, |c| eprintln!("{c}"));
    let mut t = Table::new(&["criterion", "part", "passed", "detail"]);
    for c in &checks {
        for p in &c.parts {
            t.push(vec![
                c.id.to_string(),
                p.name.clone(),
                p.passed.to_string(),
                p.detail.clone(),
            ]);
        }
    }
    let failed: Vec<String> = checks
        .iter()
        .flat_map(|c| c.parts.iter().filter(|p| !p.passed).map(move |p| (c.id, p)))
        .map(|(id, p)| match acceptance::known_red(id, &p.name) {
            Some(why) => format!("{id}/{} (known: {why})", p.name),
            None => format!("{id}/{}", p.name),
        })
        .collect();
    if !failed.is_empty() {
        return Err(CliError::SelftestFailed(format!(
            "failed: {}",
            failed.join("; ")
        )));
    }
    Ok(Output::table(
        t,
        json!({
            "level": a.level,
            "criteria": checks.iter().map(|c| json!({"id": c.id, "passed": c.passed(), "seconds": c.elapsed.as_secs_f64()})).collect::<Vec<_>>(),
            "passed": true,
        }),
    ))
}
