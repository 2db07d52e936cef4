use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use famcat_cli::{run, Cli, EXIT_MISUSE};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_MISUSE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let budget = std::env::var("FAMCAT_BUDGET").ok();
    let cert = match run(&cli, budget.as_deref()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_MISUSE);
        }
    };
    let text = cert.to_json();
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write certificate: {e}");
        return ExitCode::from(EXIT_MISUSE);
    }
    ExitCode::from(cert.verdict.exit_code())
}
