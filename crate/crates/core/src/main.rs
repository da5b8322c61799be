use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    if let Err(e) = wilflab::cli::configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    let outcome = wilflab::cli::run(std::env::args_os());
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(outcome.code as u8)
}
