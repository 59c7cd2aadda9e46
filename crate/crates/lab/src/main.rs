use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use droplet_lab::cli::Cli;
use droplet_lab::{commands, Output};

fn emit(out: &Output) -> std::io::Result<()> {
    for (path, content) in &out.files {
        std::fs::write(path, content)?;
    }
    for w in &out.warnings {
        eprintln!("warning: {w}");
    }
    std::io::stdout().write_all(out.stdout.as_bytes())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (out, failure) = commands::run(&cli.command);
    if let Err(e) = emit(&out) {
        eprintln!("error: io: {e}");
        return ExitCode::from(2);
    }
    match failure {
        None => ExitCode::SUCCESS,
        Some(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
