use std::process::ExitCode;

fn main() -> ExitCode {
    let result = chplane::cli::run(std::env::args());
    if result.exit_code == 2 {
        eprint!("{}", result.report);
    } else {
        print!("{}", result.report);
    }
    ExitCode::from(result.exit_code as u8)
}
