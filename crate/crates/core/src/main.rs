use std::io::Write;

fn main() {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let mut out = std::io::stdout();
    let mut err = std::io::stderr();
    let status = hh_bounds::cli::run_command(&argv, &mut out, &mut err);
    out.flush().ok();
    err.flush().ok();
    std::process::exit(status);
}
