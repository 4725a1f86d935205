use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let tolerance = std::env::var("TOLERANCE").ok();
    let out = nilmetric::cli::run(std::env::args_os(), tolerance.as_deref());
    std::io::stdout().write_all(out.stdout.as_bytes()).ok();
    std::io::stderr().write_all(out.stderr.as_bytes()).ok();
    ExitCode::from(out.code as u8)
}
