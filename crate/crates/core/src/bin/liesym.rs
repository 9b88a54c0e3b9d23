use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(liesym::cli::run(std::env::args()) as u8)
}
