use clap::Parser;
use koszulkit_cli::{run, Cli};
use std::io::Write;

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let (text, code) = run(&cli);
    if code == 2 && text.starts_with("error") {
        eprint!("{text}");
    } else {
        let _ = std::io::stdout().write_all(text.as_bytes());
    }
    std::process::exit(code);
}
