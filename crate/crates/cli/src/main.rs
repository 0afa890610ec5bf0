use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use syscons_cli::{execute, Args};

fn main() -> ExitCode {
    let args = Args::parse();
    let (text, code) = execute(&args);
    // Error reports go to stderr so stdout only ever carries results.
    let written = if code == 2 {
        std::io::stderr().write_all(text.as_bytes())
    } else {
        std::io::stdout().write_all(text.as_bytes())
    };
    if written.is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(code as u8)
}
