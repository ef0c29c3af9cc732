use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use conserv_cli::{exit_status, render, render_error, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    let (out, code) = match run(&cli.command, &cli.config) {
        Ok(rows) => (render(&rows, cli.config.format), exit_status(&rows)),
        Err(e) => (render_error(name, &e, cli.config.format), e.exit_code()),
    };
    let mut stdout = std::io::stdout().lock();
    // a closed pipe is not worth a panic
    let _ = stdout.write_all(out.as_bytes());
    ExitCode::from(code as u8)
}
