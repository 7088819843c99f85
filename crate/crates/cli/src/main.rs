use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use gradal::commands::seed_from_env;
use gradal::{Cli, CliError, Session};

fn run(cli: &Cli) -> Result<i32, CliError> {
    let mut session = Session::new(seed_from_env()?);
    let out = session.execute(&cli.command)?;
    let mut stdout = std::io::stdout().lock();
    stdout.write_all(out.render(cli.pretty).as_bytes())?;
    Ok(out.status)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
