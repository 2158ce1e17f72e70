use std::process::ExitCode;

use clap::Parser;
use fermat_dc_cli::{run, Cli};

fn main() -> ExitCode {
    ExitCode::from(run(&Cli::parse()))
}
