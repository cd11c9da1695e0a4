use std::process::ExitCode;

use clap::Parser;
use qhecke::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pretty = cli.global.pretty;
    match run(cli) {
        Ok(out) => {
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            println!("{}", out.render(pretty));
            ExitCode::from(out.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
