use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use descon_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = match run(&cli) {
        Ok(output) => output,
        Err(err) => {
            eprintln!("error: {err:#}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.common.out {
        Some(path) => std::fs::write(path, &output.stdout),
        None => std::io::stdout().write_all(output.stdout.as_bytes()),
    };
    if let Err(err) = written {
        eprintln!("error: cannot write output: {err}");
        return ExitCode::from(2);
    }
    eprint!("{}", output.stderr);
    if output.success {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
