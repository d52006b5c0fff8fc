use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;

use marklab_cli::{run, Cli, Io, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdin = io::stdin();
    let mut input = stdin.lock();
    let mut out = BufWriter::new(io::stdout().lock());
    let mut err = io::stderr().lock();
    let code = match run(
        cli,
        &mut Io {
            input: &mut input,
            out: &mut out,
            err: &mut err,
        },
    ) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_USAGE
        }
    };
    let _ = out.flush();
    ExitCode::from(code as u8)
}
