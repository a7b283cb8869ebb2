use std::process::ExitCode;

fn main() -> ExitCode {
    let mut stdout = std::io::stdout().lock();
    match spanlab::cli::run(std::env::args_os().skip(1), &mut stdout) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("spanlab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
