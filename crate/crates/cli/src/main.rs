use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use defsec_core::parse::parse;
use defsec_core::report::{ErrorOut, Report};
use defsec_core::run::{run, Command, Options};

/// Cotangent cohomology, versal families and modular strata of isolated singularities.
#[derive(Debug, Parser)]
#[command(name = "defsec", version)]
struct Cli {
    /// One of: invariants, t1, t1-section, t0, versal, versal-section,
    /// versal-singular-section, modular, modular-section,
    /// modular-singular-section, compare, check-qh
    command: Command,
    /// Singularity description file
    input: PathBuf,
    /// Emit the JSON report
    #[arg(long)]
    json: bool,
    /// Jet order d (default 2·maxdeg + 4)
    #[arg(long)]
    jet: Option<u32>,
    /// Parameter truncation order q (default 4)
    #[arg(long)]
    order: Option<u32>,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match std::fs::read_to_string(&cli.input) {
        Ok(text) => match parse(&text) {
            Ok(doc) => run(cli.command, &doc, &Options { jet: cli.jet, order: cli.order }),
            Err(e) => Report { error: Some(ErrorOut::from(&e)), ..Report::default() },
        },
        Err(e) => Report {
            error: Some(ErrorOut { module: "cli_io".into(), message: format!("{}: {e}", cli.input.display()) }),
            ..Report::default()
        },
    };
    let text = if cli.json { report.to_json() } else { report.to_text() };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("defsec: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if let Some(e) = &report.error {
        eprintln!("defsec: error [{}]: {}", e.module, e.message);
        return ExitCode::FAILURE;
    }
    ExitCode::SUCCESS
}
