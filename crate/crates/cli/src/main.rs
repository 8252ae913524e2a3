use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use dwork_cli::{run, Command};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "dwork", version, about = "Exact checks for Dwork-family hypergeometric monodromy")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Omit wall times so repeated runs are byte-identical
    #[arg(long, global = true)]
    no_timing: bool,
    /// Seed for randomized checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut report = match run(&cli.command, cli.seed) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    report.finish(!cli.no_timing);
    let out = match cli.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    };
    // a closed pipe (e.g. `| head`) is not an error
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
    ExitCode::from(report.exit_code() as u8)
}
