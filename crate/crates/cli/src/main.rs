use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use qtl_cli::args::Cli;
use qtl_cli::report::render_error;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = qtl_cli::init_threads(std::env::var("QTL_THREADS").ok().as_deref()) {
        eprint!("{}", render_error(cli.format, cli.command.name(), &e));
        return ExitCode::from(1);
    }
    let outcome = qtl_cli::run(&cli);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(outcome.code as u8)
}
