use clap::Parser;
use kdyn_cli::{execute, Cli};
use std::io::Write;

fn main() {
    let cli = Cli::parse();
    let (code, out, err) = execute(&cli);
    print!("{out}");
    eprint!("{err}");
    let _ = std::io::stdout().flush();
    std::process::exit(code);
}
