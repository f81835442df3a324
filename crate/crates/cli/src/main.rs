use std::process::ExitCode;

use clap::Parser;
use moncat_cli::commands::read_document;
use moncat_cli::{run, Cli, TOLERANCE_ENV};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = cli.command.common();
    let env = std::env::var(TOLERANCE_ENV).ok();
    let result = read_document(common).and_then(|text| run(&cli.command, &text, env.as_deref()));
    let output = match result {
        Ok(output) => output,
        Err(e) => {
            eprintln!("mcat: {e}");
            return ExitCode::from(2);
        }
    };
    match &common.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &output.rendered) {
                eprintln!("mcat: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{}", output.rendered),
    }
    ExitCode::from(output.exit as u8)
}
