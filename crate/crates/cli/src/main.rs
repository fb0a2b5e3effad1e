//! `boolcx`: measure single functions, sweep theorem checkers over function
//! spaces, inspect communication matrices and generate family members.
//!
//! Exit codes: 0 success, 1 violation found, 2 usage or parse error,
//! 3 arity above a cap.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use boolcx::comm::Composition;
use boolcx::verify::{parse_theorems, SweepSpace, TheoremId};
use boolcx::{Caps, Error};

#[derive(Parser, Debug)]
#[command(
    name = "boolcx",
    version,
    about = "Exact complexity measures for small Boolean functions"
)]
struct Cli {
    #[command(flatten)]
    config: Config,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Shared options. Flags override `BOOLCX_*` environment variables, which
/// override the defaults.
#[derive(Args, Debug)]
pub struct Config {
    /// Output format; JSON and CSV layouts are versioned, text is not.
    #[arg(
        long,
        global = true,
        env = "BOOLCX_FORMAT",
        value_enum,
        default_value = "json"
    )]
    pub format: Format,

    /// Write output here instead of stdout.
    #[arg(long, global = true, env = "BOOLCX_OUT")]
    pub out: Option<PathBuf>,

    /// Worker threads for sweeps; 0 uses every core.
    #[arg(long, global = true, env = "BOOLCX_JOBS", default_value_t = 0)]
    pub jobs: usize,

    #[arg(long, global = true, env = "BOOLCX_CAP_BS", value_name = "N")]
    pub cap_bs: Option<usize>,
    #[arg(long, global = true, env = "BOOLCX_CAP_CERTIFICATE", value_name = "N")]
    pub cap_certificate: Option<usize>,
    #[arg(long, global = true, env = "BOOLCX_CAP_CMIN_CLOSURE", value_name = "N")]
    pub cap_cmin_closure: Option<usize>,
    #[arg(long, global = true, env = "BOOLCX_CAP_DT", value_name = "N")]
    pub cap_dt: Option<usize>,
    #[arg(long, global = true, env = "BOOLCX_CAP_TREE_BUILDER", value_name = "N")]
    pub cap_tree_builder: Option<usize>,
    #[arg(long, global = true, env = "BOOLCX_CAP_COMM", value_name = "N")]
    pub cap_comm: Option<usize>,
    #[arg(long, global = true, env = "BOOLCX_CAP_EXACT_COVER", value_name = "N")]
    pub cap_exact_cover: Option<usize>,
}

impl Config {
    pub fn caps(&self) -> Result<Caps, Error> {
        let d = Caps::default();
        let caps = Caps {
            block_sensitivity: self.cap_bs.unwrap_or(d.block_sensitivity),
            certificate: self.cap_certificate.unwrap_or(d.certificate),
            cmin_closure: self.cap_cmin_closure.unwrap_or(d.cmin_closure),
            decision_tree: self.cap_dt.unwrap_or(d.decision_tree),
            tree_builder: self.cap_tree_builder.unwrap_or(d.tree_builder),
            comm_matrix: self.cap_comm.unwrap_or(d.comm_matrix),
            exact_cover: self.cap_exact_cover.unwrap_or(d.exact_cover),
        };
        caps.validate()?;
        Ok(caps)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Every measure, spectrum summary, term set and theorem verdict of one
    /// function.
    Measure {
        /// `<n>:<hex>` or `family:name(k=v,…)#seed`.
        function: String,
    },
    /// Run theorem checkers over `exhaustive:<n>` or a list of functions.
    Verify {
        #[arg(required = true)]
        space: Vec<String>,
        /// Run every checker (the default).
        #[arg(long, conflicts_with = "thm")]
        all: bool,
        /// Comma-separated checker ids, or `all`.
        #[arg(long)]
        thm: Option<String>,
    },
    /// Communication matrix, rank identity, covers and protocol checks.
    Comm {
        function: String,
        #[arg(long, conflicts_with = "xor")]
        and: bool,
        #[arg(long)]
        xor: bool,
    },
    /// Materialise a family member as a truth table.
    Generate { family: String },
    /// List the checker ids.
    Theorems,
}

/// A failure mapped onto the exit-code contract.
pub enum Failure {
    Usage(String),
    Cap(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ArityAboveCap { .. } => Failure::Cap(e.to_string()),
            Error::Invariant(_) => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn parse_space(items: &[String]) -> Result<SweepSpace, Failure> {
    if let [single] = items {
        if let Some(n) = single.strip_prefix("exhaustive:") {
            let n = n
                .parse()
                .map_err(|_| Failure::Usage(format!("bad space {single:?}")))?;
            return Ok(SweepSpace::Exhaustive(n));
        }
    }
    let functions = items
        .iter()
        .map(|text| {
            Ok(boolcx::verify::LabeledFunction {
                label: text.clone(),
                table: boolcx::families::parse_function(text)?,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(SweepSpace::Functions(functions))
}

/// Runs the command; `Ok(true)` means a violation was found.
fn run(cli: Cli) -> Result<bool, Failure> {
    let config = &cli.config;
    let caps = config.caps()?;
    match cli.command {
        Command::Measure { function } => {
            let t = boolcx::families::parse_function(&function)?;
            let report = output::MeasureOutput::compute(&t, &caps)?;
            output::emit(config, &report)?;
            Ok(report.violations() > 0)
        }
        Command::Verify { space, all, thm } => {
            let theorems = match (all, thm) {
                (_, Some(list)) => parse_theorems(&list)?,
                _ => TheoremId::ALL.to_vec(),
            };
            let space = parse_space(&space)?;
            let result = boolcx::verify::sweep(&space, &theorems, config.jobs, &caps)?;
            output::emit(config, &output::SweepOutput(&result))?;
            Ok(result.total_violations > 0)
        }
        Command::Comm { function, and, xor } => {
            let t = boolcx::families::parse_function(&function)?;
            let compositions = match (and, xor) {
                (true, _) => vec![Composition::And],
                (_, true) => vec![Composition::Xor],
                _ => vec![Composition::And, Composition::Xor],
            };
            let report = output::CommOutput::compute(&t, &compositions, &caps)?;
            output::emit(config, &report)?;
            Ok(!report.consistent())
        }
        Command::Generate { family } => {
            let t = boolcx::families::parse_function(&family)?;
            output::emit(config, &output::GenerateOutput::new(&family, t))?;
            Ok(false)
        }
        Command::Theorems => {
            output::emit(config, &output::TheoremList)?;
            Ok(false)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
