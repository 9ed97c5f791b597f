use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pcw_cli::{run, Command, Format, RunConfig};

#[derive(Parser)]
#[command(name = "pcw", version, about = "Exact symplectic and almost-Kähler cohomology on invariant forms")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Check structure equations, d^2 = 0, dω = 0 and compatibility of (g, J, ω)
    Validate {
        model: String,
        #[arg(long)]
        json: bool,
    },
    /// Cohomology, harmonic spaces and verdicts in degree two
    Report {
        model: String,
        #[arg(long)]
        json: bool,
    },
    /// Compare computed spaces with the published rows for a builtin
    Tables { builtin: String },
    /// Test one predicate on one form
    Verify {
        model: String,
        #[arg(long)]
        form: String,
        #[arg(long)]
        pred: String,
        #[arg(long)]
        json: bool,
    },
    /// Print the builtin model names
    ListBuiltins,
    /// Cross-check both stars against brute-force index summation
    OracleCheck { builtin: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let max_dim = match RunConfig::max_dim_from_env() {
        Ok(n) => n,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let format = |json: bool| if json { Format::Json } else { Format::Text };
    let config = match cli.command {
        Sub::Validate { model, json } => RunConfig { format: format(json), ..RunConfig::new(Command::Validate, Some(&model)) },
        Sub::Report { model, json } => RunConfig { format: format(json), ..RunConfig::new(Command::Report, Some(&model)) },
        Sub::Tables { builtin } => RunConfig::new(Command::Tables, Some(&builtin)),
        Sub::Verify { model, form, pred, json } => RunConfig {
            format: format(json),
            ..RunConfig::new(Command::Verify, Some(&model)).with_check(&form, &pred)
        },
        Sub::ListBuiltins => RunConfig::new(Command::ListBuiltins, None),
        Sub::OracleCheck { builtin } => RunConfig::new(Command::OracleCheck, Some(&builtin)),
    }
    .with_max_dim(max_dim);
    let out = run(&config);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
