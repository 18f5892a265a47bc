use std::io::{stderr, stdout};
use std::process::ExitCode;

fn main() -> ExitCode {
    let status = idcode::cli::run(std::env::args_os(), &mut stdout().lock(), &mut stderr().lock());
    ExitCode::from(u8::try_from(status).unwrap_or(1))
}
