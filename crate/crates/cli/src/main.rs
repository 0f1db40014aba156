use std::process::ExitCode;

use clap::Parser;
use slimsell_cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // help and version are not errors; bad arguments are config errors
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let code = execute(
        cli,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    ExitCode::from(code as u8)
}
