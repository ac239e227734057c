use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;

use rainbow_cactus_cli::{run, Cli, EXIT_INPUT};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = match run(cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e:#}");
            EXIT_INPUT
        }
    };
    let _ = out.flush();
    ExitCode::from(code as u8)
}
