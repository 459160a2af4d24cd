use std::io::Write;
use std::process::ExitCode;

use compcode::cli::{execute, parse_config};
use compcode::Error;

fn main() -> ExitCode {
    let result = parse_config(std::env::args_os().skip(1)).and_then(|config| execute(&config));
    match result {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(outcome.output.as_bytes()).is_err() {
                return ExitCode::from(2);
            }
            if outcome.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Error::Usage(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
