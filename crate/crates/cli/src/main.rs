use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use preclusion_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let code = out.exit_code();
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(&out.into_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
