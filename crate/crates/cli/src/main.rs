use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(braidwork::cli::run(std::env::args_os()))
}
