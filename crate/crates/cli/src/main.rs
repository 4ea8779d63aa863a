use std::process::ExitCode;

use clap::Parser;
use ncchar_cli::cli::{run, Cli};

fn main() -> ExitCode {
    run(Cli::parse())
}
