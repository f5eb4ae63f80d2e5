use clap::Parser;

use ogc_cli::args::Cli;

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let code = match ogc_cli::run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("ogc: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}
