use std::io::{stderr, stdout};
use std::process::ExitCode;

fn main() -> ExitCode {
    let mut out = stdout().lock();
    let mut err = stderr().lock();
    let code = nnv::cli::run_from(std::env::args_os(), &mut out, &mut err);
    ExitCode::from(code as u8)
}
