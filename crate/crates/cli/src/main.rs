//! `dimerlab`: dimer quivers, perfect matchings, contractions and locus
//! checks from the command line.
//!
//! Exit status: 0 when the requested check succeeds, 1 when the mathematics
//! answers no, 2 on unreadable or invalid input.

mod commands;
mod manifest;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{Report, Status};

#[derive(Parser)]
#[command(name = "dimerlab", version, about = "Dimer algebras on the torus and their contractions")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write the report (or the contracted dimer, or the SVG) here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Clone)]
struct DimerArg {
    /// Dimer JSON file, or the name of a bundled fixture.
    #[arg(long)]
    dimer: String,
}

#[derive(Args, Clone)]
struct BudgetArg {
    /// Path-length budget for bounded searches [default: max(12, 3 × longest face)].
    #[arg(long, env = "DIMERLAB_BUDGET")]
    budget: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the dimer invariants and report every violation.
    Validate {
        /// Dimer JSON file or fixture name.
        file: Option<String>,
        #[arg(long)]
        dimer: Option<String>,
    },
    /// Enumerate perfect matchings and mark the simple ones.
    Matchings(DimerArg),
    /// Generators of S and R with witness cycles.
    Rings {
        #[command(flatten)]
        dimer: DimerArg,
        /// Compute S and R of this dimer contracted onto `--dimer`.
        #[arg(long, requires = "stars")]
        contract_from: Option<String>,
        #[arg(long, value_delimiter = ',')]
        stars: Vec<String>,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Contract arrows and check the result.
    Contract {
        #[command(flatten)]
        dimer: DimerArg,
        /// Comma-separated arrows to contract.
        #[arg(long, value_delimiter = ',', required = true)]
        stars: Vec<String>,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Place a point of Max B relative to U and the Azumaya loci.
    Locus {
        #[command(flatten)]
        dimer: DimerArg,
        /// Arrows contracted to reach the cancellative dimer the point lives on.
        #[arg(long, value_delimiter = ',')]
        stars: Vec<String>,
        /// Point file: {"x0": "1/2", ...}.
        #[arg(long)]
        point: PathBuf,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Representations of dimension one at each vertex and their simplicity.
    Simples {
        #[command(flatten)]
        dimer: DimerArg,
        /// Point file; without it the coordinate points of the simple matchings are listed.
        #[arg(long)]
        point: Option<PathBuf>,
    },
    /// Search for two cycles generating a free subalgebra.
    PiCheck {
        #[command(flatten)]
        dimer: DimerArg,
        #[arg(long, value_delimiter = ',')]
        stars: Vec<String>,
        /// Words up to this length are checked pairwise.
        #[arg(long, default_value_t = 4)]
        word_length: usize,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Draw a fundamental domain as SVG.
    Render {
        file: Option<String>,
        #[arg(long)]
        dimer: Option<String>,
        /// JSON object mapping arrow ids to solid, dotted, dashed or double.
        #[arg(long)]
        styles: Option<PathBuf>,
    },
    /// Bundled fixtures and their expected results.
    Fixtures {
        #[command(subcommand)]
        action: FixtureAction,
    },
}

#[derive(Subcommand)]
enum FixtureAction {
    /// List the bundled fixtures.
    List,
    /// Run the expected-results checks of one fixture, or of all.
    Run { name: Option<String> },
}

/// An input problem: exit status 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct InputError(pub String);

fn positional_or_flag(file: Option<String>, dimer: Option<String>) -> anyhow::Result<String> {
    file.or(dimer).ok_or_else(|| InputError("a dimer file is required".into()).into())
}

fn run(cli: &Cli) -> anyhow::Result<Report> {
    match &cli.command {
        Command::Validate { file, dimer } => commands::validate(&positional_or_flag(file.clone(), dimer.clone())?),
        Command::Matchings(d) => commands::matchings(&d.dimer),
        Command::Rings { dimer, contract_from, stars, budget } => {
            commands::rings(&dimer.dimer, contract_from.as_deref(), stars, budget.budget)
        }
        Command::Contract { dimer, stars, budget } => commands::contract(&dimer.dimer, stars, budget.budget, cli.out.is_some()),
        Command::Locus { dimer, stars, point, budget } => commands::locus(&dimer.dimer, stars, point, budget.budget),
        Command::Simples { dimer, point } => commands::simples(&dimer.dimer, point.as_deref()),
        Command::PiCheck { dimer, stars, word_length, budget } => {
            commands::pi_check(&dimer.dimer, stars, *word_length, budget.budget)
        }
        Command::Render { file, dimer, styles } => {
            commands::render(&positional_or_flag(file.clone(), dimer.clone())?, styles.as_deref())
        }
        Command::Fixtures { action: FixtureAction::List } => Ok(manifest::list()),
        Command::Fixtures { action: FixtureAction::Run { name } } => manifest::run(name.as_deref()),
    }
}

fn emit(cli: &Cli, report: &Report) -> anyhow::Result<()> {
    let body = match (&report.raw, cli.format) {
        (Some(raw), _) => raw.clone(),
        (None, Format::Json) => serde_json::to_string_pretty(&report.json)? + "\n",
        (None, Format::Text) => report.text.clone(),
    };
    match &cli.out {
        Some(path) => {
            std::fs::write(path, &body)?;
            if report.raw.is_some() && matches!(cli.format, Format::Text) && !report.text.is_empty() {
                print!("{}", report.text);
            }
        }
        None => print!("{body}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|r| emit(&cli, &r).map(|_| r)) {
        Ok(r) => match r.status {
            Status::Success => ExitCode::SUCCESS,
            Status::Negative => ExitCode::from(1),
            Status::Invalid => ExitCode::from(2),
        },
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
