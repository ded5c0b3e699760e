use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(diambounds::cli::run(std::env::args()))
}
