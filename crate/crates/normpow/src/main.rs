use std::process::exit;

use clap::Parser;

fn main() {
    // clap itself exits with code 2 on usage errors.
    let cli = normpow::cli::Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match normpow::cli::run(&cli, &mut out) {
        Ok(code) => exit(code),
        Err(e) => {
            eprintln!("normpow: {e}");
            exit(2);
        }
    }
}
