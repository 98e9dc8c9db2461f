use std::io;

use splice_d::cli;

fn main() {
    if let Err(e) = cli::configure_threads() {
        eprintln!("error: {e}");
        std::process::exit(2);
    }
    let stdin = io::stdin();
    let code = cli::run(
        std::env::args_os(),
        &mut stdin.lock(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    std::process::exit(code);
}
