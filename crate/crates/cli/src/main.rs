use std::process::ExitCode;

use clap::Parser;
use groupoidal_cli::render::canonical;
use groupoidal_cli::{run, Cli, Format, EXIT_FAILED_CHECK, EXIT_INVALID};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot start {n} threads: {e}");
            return ExitCode::from(EXIT_INVALID as u8);
        }
    }
    match run(&cli.command) {
        Ok(out) => {
            match cli.format {
                Format::Json => print!("{}", canonical(&out.json)),
                Format::Table => print!("{}", out.table),
            }
            if out.verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAILED_CHECK as u8)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INVALID as u8)
        }
    }
}
