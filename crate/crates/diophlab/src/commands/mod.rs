//! Subcommand definitions and dispatch.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{resolve_budget, RunConfig, DEFAULT_SEED};
use crate::emit::{companion_path, Format, Output};
use crate::error::{CliError, CliResult};

pub mod bohr;
pub mod cf;
pub mod measure;
pub mod ostrowski;
pub mod selftest;
pub mod shiftred;
pub mod sums;
pub mod threegap;

#[derive(Debug, Parser)]
#[command(
    name = "diophlab",
    version,
    about = "Certified experiments in inhomogeneous diophantine approximation",
    long_about = "Certified experiments in inhomogeneous diophantine approximation.\n\n\
        Real inputs are JSON: {\"rational\": \"p/q\"}, {\"surd\": {\"a\": \"p/q\", \"b\": \"p/q\", \"D\": n}}, \
        {\"cf\": [a0, a1, ...]} or {\"cf_rule\": \"golden\" | \"sqrt2\" | \"e\" | \"rapid\" | \"const:k\"}. \
        Any JSON argument may also be a path to a file.\n\n\
        Exit status: 0 on success, 2 on parameter errors, 3 when a decision stays open at the \
        refinement budget, 1 otherwise. Errors are reported as JSON on stderr."
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Table output path; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Table format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Where to write the summary JSON. Without it the summary goes to
    /// stdout whenever the table does not.
    #[arg(long, global = true)]
    pub summary: Option<PathBuf>,
    /// Refinement steps per certified decision (step i asks for width
    /// 2^-(64+64i)). DIOPHLAB_BUDGET overrides it.
    #[arg(long, global = true)]
    pub budget: Option<u32>,
    /// Seed for randomised fixtures.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Worker threads; defaults to the machine's parallelism.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Continued fractions: convergents, error terms D_j, growth exponent.
    #[command(subcommand)]
    Cf(cf::CfCommand),
    /// Ostrowski numeration, cylinders, shifted digit expansions.
    #[command(subcommand)]
    Ostrowski(ostrowski::OstrowskiCommand),
    /// Largest gap of {iα}, i <= m, by formula and by sorting.
    Threegap(threegap::ThreegapArgs),
    /// Bohr sets, generalised arithmetic progressions, congruence lattices.
    #[command(subcommand)]
    Bohr(bohr::BohrCommand),
    /// Shift-reduced fractions and the shifted totient.
    #[command(subcommand)]
    Shiftred(shiftred::ShiftredCommand),
    /// Approximation sets as exact interval unions; overlap diagnostics.
    #[command(subcommand)]
    Measure(measure::MeasureCommand),
    /// Logarithmic averages, counting experiments, dyadic comparisons.
    #[command(subcommand)]
    Sums(sums::SumsCommand),
    /// Runs the acceptance criteria.
    Selftest(selftest::SelftestArgs),
}

impl Command {
    fn path(&self) -> Vec<String> {
        let (head, sub) = match self {
            Command::Cf(c) => ("cf", Some(c.name())),
            Command::Ostrowski(c) => ("ostrowski", Some(c.name())),
            Command::Threegap(_) => ("threegap", None),
            Command::Bohr(c) => ("bohr", Some(c.name())),
            Command::Shiftred(c) => ("shiftred", Some(c.name())),
            Command::Measure(c) => ("measure", Some(c.name())),
            Command::Sums(c) => ("sums", Some(c.name())),
            Command::Selftest(_) => ("selftest", None),
        };
        core::iter::once(head)
            .chain(sub)
            .map(str::to_string)
            .collect()
    }
}

/// Runs one command and writes its outputs.
pub fn execute(cli: Cli) -> CliResult<()> {
    let g = &cli.global;
    if let Some(t) = g.threads {
        if t == 0 {
            return Err(CliError::usage("--threads must be at least 1"));
        }
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global();
    }
    let mut cfg = RunConfig {
        command: cli.command.path(),
        params: serde_json::Value::Null,
        out: g.out.clone(),
        format: g.format,
        refinement_budget: resolve_budget(g.budget)?,
        random_seed: g.seed,
    };
    let out = match &cli.command {
        Command::Cf(c) => cf::run(c, &mut cfg),
        Command::Ostrowski(c) => ostrowski::run(c, &mut cfg),
        Command::Threegap(c) => threegap::run(c, &mut cfg),
        Command::Bohr(c) => bohr::run(c, &mut cfg),
        Command::Shiftred(c) => shiftred::run(c, &mut cfg),
        Command::Measure(c) => measure::run(c, &mut cfg),
        Command::Sums(c) => sums::run(c, &mut cfg),
        Command::Selftest(c) => selftest::run(c, &mut cfg),
    }?;
    emit(out, &cfg, g.summary.as_ref())
}

fn emit(out: Output, cfg: &RunConfig, summary_path: Option<&PathBuf>) -> CliResult<()> {
    let table_path = cfg.out.clone().or(out.default_out.clone());
    let mut summary = out.summary;
    if let serde_json::Value::Object(m) = &mut summary {
        m.insert(
            "config".into(),
            serde_json::to_value(cfg).expect("config serialises"),
        );
    }
    let mut stdout = std::io::stdout().lock();
    let table_on_stdout = out.table.is_some() && table_path.is_none();
    if let Some(t) = &out.table {
        match &table_path {
            Some(p) => {
                let f = fs::File::create(p)?;
                t.write(std::io::BufWriter::new(f), cfg.format)?;
                for (suffix, text) in &out.companions {
                    fs::write(companion_path(p, suffix), text)?;
                }
            }
            None => t.write(&mut stdout, cfg.format)?,
        }
    }
    let text = serde_json::to_string_pretty(&summary).expect("summary serialises");
    match summary_path {
        Some(p) => fs::write(p, format!("{text}\n"))?,
        None if !table_on_stdout => writeln!(stdout, "{text}")?,
        None => {}
    }
    Ok(())
}

/// Parses a comma separated list of non-negative integers.
pub fn parse_digits(s: &str) -> CliResult<Vec<num_bigint::BigUint>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| CliError::usage(format!("not a digit: {t:?}")))
        })
        .collect()
}
