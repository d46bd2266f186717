use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fricke_cli::config::{DEFAULT_RELATIVE_TOLERANCE, DEFAULT_SEED};
use fricke_cli::{
    cmd_certify, cmd_compare, cmd_ealg, cmd_induce, cmd_lower_bound, cmd_rho, cmd_trace,
    load_automorphism, render, CliError, Format, Report, RunConfig,
};
use fricke_core::cert::DEFAULT_PRIME;
use fricke_core::dynamics::DEFAULT_TERM_BUDGET;
use fricke_core::growth::DEFAULT_LENGTH_BUDGET;
use fricke_core::Automorphism;

#[derive(Debug, Parser)]
#[command(
    name = "fricke",
    version,
    about = "Growth rates and algebraic entropy of free-group automorphisms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Automorphism definition (JSON with rank, images, inverse_images)
    #[arg(long, global = true, value_name = "FILE")]
    aut: Option<PathBuf>,

    /// Number of iterates (defaults depend on the subcommand)
    #[arg(long, global = true)]
    n_max: Option<usize>,

    /// Cap on cyclically reduced word length
    #[arg(long, global = true, default_value_t = DEFAULT_LENGTH_BUDGET)]
    budget: usize,

    /// Cap on stored monomials of a trace-map iterate
    #[arg(long, global = true, default_value_t = DEFAULT_TERM_BUDGET)]
    term_budget: usize,

    /// Prime for the p-adic certificate
    #[arg(long, global = true, default_value_t = DEFAULT_PRIME)]
    prime: u64,

    /// Seed for all randomized checks
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Relative tolerance for compare (absolute floor 0.05)
    #[arg(long, global = true, default_value_t = DEFAULT_RELATIVE_TOLERANCE)]
    tol: f64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exponential growth rate of cyclically reduced word length
    Rho,
    /// Degree growth rate of the induced map on the character variety
    Ealg,
    /// Trace polynomial of a word in a, b, A, B
    Trace { word: String },
    /// Induced trace map (tr f(X), tr f(Y), tr f(XY))
    Induce,
    /// Translation-length certificate for the p-adic representation
    Certify,
    /// Certified lower bound for the algebraic entropy
    LowerBound,
    /// All three rates, their gaps and a verdict
    Compare,
}

impl Cli {
    fn config(&self) -> RunConfig {
        RunConfig {
            n_max: self.n_max,
            budget: self.budget,
            term_budget: self.term_budget,
            prime: self.prime,
            seed: self.seed,
            tol: self.tol,
        }
    }

    fn automorphism(&self) -> Result<Automorphism, CliError> {
        match &self.aut {
            Some(path) => load_automorphism(path),
            None => Err(CliError::Config("--aut FILE is required".into())),
        }
    }
}

fn emit<R: Report>(report: R, format: Format) -> Result<bool, CliError> {
    print!("{}", render(&report, format)?);
    Ok(report.verdict().is_pass())
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let config = cli.config();
    let format = cli.format;
    match &cli.command {
        Command::Rho => emit(cmd_rho(&cli.automorphism()?, &config)?, format),
        Command::Ealg => emit(cmd_ealg(&cli.automorphism()?, &config)?, format),
        Command::Trace { word } => emit(cmd_trace(word)?, format),
        Command::Induce => emit(cmd_induce(&cli.automorphism()?)?, format),
        Command::Certify => {
            let rank = match &cli.aut {
                Some(path) => load_automorphism(path)?.rank(),
                None => 2,
            };
            emit(cmd_certify(rank, &config)?, format)
        }
        Command::LowerBound => emit(cmd_lower_bound(&cli.automorphism()?, &config)?, format),
        Command::Compare => emit(cmd_compare(&cli.automorphism()?, &config)?, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
