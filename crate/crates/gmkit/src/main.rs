use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let mut out = std::io::stdout();
    let code = gmkit::cli::run(&args, &mut out);
    ExitCode::from(code as u8)
}
