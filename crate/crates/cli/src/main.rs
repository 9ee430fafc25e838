use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use connobs_cli::{catalog_command, der_command, run_command, CatalogOptions, Status};
use connobs_core::obstructions::Stages;

#[derive(Parser)]
#[command(name = "connobs", version, about = "Obstructions to connections on finitely presented modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the obstruction stages on every module of an input file.
    Run {
        file: PathBuf,
        /// Comma-separated subset of der, aclass, kskernel, lclass.
        #[arg(long, value_parser = parse_stages)]
        stages: Option<Stages>,
        /// Write the machine-readable report here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// List, print or verify the built-in catalog.
    Catalog {
        /// Compare computed verdicts with the expected ones.
        #[arg(long)]
        verify: bool,
        /// Print the selected entries in input syntax.
        #[arg(long)]
        show: bool,
        #[arg(long)]
        json: Option<PathBuf>,
        /// Entry id, `*` matches any run of characters.
        pattern: Option<String>,
    },
    /// Print generators and relations of the derivation module.
    Der { file: PathBuf },
}

fn parse_stages(s: &str) -> Result<Stages, String> {
    Stages::parse_list(s).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    let result = match cli.command {
        Command::Run { file, stages, json } => run_command(&file, stages, json, &mut stdout),
        Command::Catalog { verify, show, json, pattern } => {
            catalog_command(pattern.as_deref(), CatalogOptions { verify, show }, json, &mut stdout)
        }
        Command::Der { file } => der_command(&file, &mut stdout),
    };
    let _ = stdout.flush();
    let status = result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        e.status()
    });
    if status == Status::Mismatch {
        eprintln!("verdict mismatch");
    }
    ExitCode::from(status.code())
}
