use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = ads3::cli::Cli::parse();
    if let Err(e) = ads3::cli::configure_workers() {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    match ads3::cli::run(&cli) {
        Ok(code) => code.into(),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(ads3::cli::exit_code_for(&e))
        }
    }
}
