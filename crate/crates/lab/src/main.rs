use clap::Parser;

use carlab::cli::{run, Cli};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let _ = e.print();
            std::process::exit(2);
        }
    };
    if let Err(e) = run(&cli) {
        eprintln!("{}", e.record());
        std::process::exit(e.exit_code());
    }
}
