use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(sa2gd::cli::run(std::env::args_os()))
}
