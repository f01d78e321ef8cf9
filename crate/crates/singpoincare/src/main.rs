use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use singpoincare::job::{self, Command, Format, RunOptions};

/// Exact Poincaré series and Alexander polynomials of multi-index
/// filtrations on plane curve and surface singularities.
#[derive(Parser)]
#[command(name = "singpoincare", version, disable_help_subcommand = true)]
struct Cli {
    /// What to compute.
    #[arg(value_enum)]
    command: CliCommand,
    /// Path to the JSON job file.
    jobfile: String,
    /// Total-degree truncation of expanded series.
    #[arg(long)]
    truncate: Option<u64>,
    /// Seed for the deterministic curvette-seed stream.
    #[arg(long)]
    seed: Option<u64>,
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    format: CliFormat,
    /// For `oracle`: also run the product formula and compare exactly.
    #[arg(long)]
    compare: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum CliCommand {
    Resolve,
    Poincare,
    Alexander,
    Zeta,
    Equivariant,
    Ideal,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum CliFormat {
    Text,
    Json,
    Dot,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version requests are not errors
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    let command = match cli.command {
        CliCommand::Resolve => Command::Resolve,
        CliCommand::Poincare => Command::Poincare,
        CliCommand::Alexander => Command::Alexander,
        CliCommand::Zeta => Command::Zeta,
        CliCommand::Equivariant => Command::Equivariant,
        CliCommand::Ideal => Command::Ideal,
        CliCommand::Oracle => Command::Oracle,
    };
    let opts = RunOptions {
        truncate: cli.truncate,
        seed: cli.seed,
        format: match cli.format {
            CliFormat::Text => Format::Text,
            CliFormat::Json => Format::Json,
            CliFormat::Dot => Format::Dot,
        },
        compare: cli.compare,
    };
    let text = match std::fs::read_to_string(&cli.jobfile) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("singpoincare: cannot read `{}`: {e}", cli.jobfile);
            return ExitCode::from(1);
        }
    };
    match job::run(command, &text, &opts) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("singpoincare: {err}");
            ExitCode::from(job::exit_code(&err) as u8)
        }
    }
}
