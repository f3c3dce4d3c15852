//! `g2t`: batch verification of SU(3)- and G2T-structures on nilpotent Lie algebras.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use commands::CliError;
use report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Debug, Parser)]
#[command(name = "g2t", version, about = "Exact verification of G2T-structures on N x S^1")]
struct Cli {
    /// Parameter binding `name=value` (repeatable); `λ` is accepted for `lam`.
    #[arg(long = "param", global = true, value_name = "NAME=VALUE")]
    params: Vec<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Jacobi identity and nilpotency.
    Check { algebra: String },
    /// Betti numbers of the Chevalley-Eilenberg complex.
    Betti { algebra: String },
    /// Isomorphism invariants.
    Fingerprint { algebra: String },
    /// Intrinsic torsion of an SU(3)-structure file.
    Su3 { file: PathBuf },
    /// Lee form, torsion and representation tests of the product G2-structure.
    G2t { file: PathBuf },
    /// Replays the classification of half-integrable G2T nilmanifold products.
    Theorem,
    /// Limit of the rescaling f^i = t^(m_i) e^i.
    Contract {
        algebra: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        exponents: Vec<i32>,
        /// `0` or `infinity`; defaults to the unique converging direction.
        #[arg(long)]
        direction: Option<String>,
        /// Algebra whose fingerprint the limit must match.
        #[arg(long)]
        target: Option<String>,
    },
    /// Randomized basis-change checks on the built-in catalog.
    Selftest {
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
}

fn describe(c: &Command) -> (&'static str, String) {
    match c {
        Command::Check { algebra } => ("check", algebra.clone()),
        Command::Betti { algebra } => ("betti", algebra.clone()),
        Command::Fingerprint { algebra } => ("fingerprint", algebra.clone()),
        Command::Su3 { file } => ("su3", file.display().to_string()),
        Command::G2t { file } => ("g2t", file.display().to_string()),
        Command::Theorem => ("theorem", String::new()),
        Command::Contract { algebra, .. } => ("contract", algebra.clone()),
        Command::Selftest { .. } => ("selftest", String::new()),
    }
}

fn execute(cli: &Cli, r: &mut Report) -> Result<(), CliError> {
    let b = commands::parse_params(&cli.params)?;
    match &cli.command {
        Command::Check { algebra } => commands::check(r, algebra, &b),
        Command::Betti { algebra } => commands::betti(r, algebra, &b),
        Command::Fingerprint { algebra } => commands::fingerprint(r, algebra, &b),
        Command::Su3 { file } => commands::su3(r, file, &b),
        Command::G2t { file } => commands::g2t(r, file, &b),
        Command::Theorem => commands::theorem(r),
        Command::Contract {
            algebra,
            exponents,
            direction,
            target,
        } => commands::contract(r, algebra, &b, exponents, direction.as_deref(), target.as_deref()),
        Command::Selftest { cases } => commands::selftest(r, cli.seed, *cases),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, input) = describe(&cli.command);
    let mut report = Report::new(name, input);
    let start = Instant::now();
    let outcome = execute(&cli, &mut report);
    if cli.timing {
        report.elapsed_ms = Some(start.elapsed().as_millis());
    }
    let code = match &outcome {
        Ok(()) if report.passed => 0,
        Ok(()) => 1,
        Err(e) => {
            report.fail(e.message().to_string());
            e.exit_code()
        }
    };
    let text = match cli.format {
        Format::Text => report.render_text(),
        Format::Structured => report.render_structured() + "\n",
    };
    print!("{text}");
    if let Err(e) = &outcome {
        eprintln!("g2t: {}", e.message());
    }
    ExitCode::from(code as u8)
}
