use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use num_rational::Rational64;

use qtoric_cli::run::{parse_delta, read_stdin};
use qtoric_cli::{run_source, RunOptions};

/// Runs a qtoric program.
#[derive(Debug, Parser)]
#[command(name = "qtoric", version)]
struct Args {
    /// Program file; stdin when omitted.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Samples per part for `estimate` and `decide`.
    #[arg(long)]
    samples: Option<usize>,
    /// Additive error target as k/m.
    #[arg(long, value_parser = parse_delta, default_value = "1/10")]
    delta: Rational64,
    /// CSV destination for `bench`.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match &args.input {
        Some(p) => std::fs::read_to_string(p),
        None => read_stdin(),
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let opts = RunOptions { seed: args.seed, samples: args.samples, delta: args.delta, out: args.out };
    let code = run_source(&text, &opts, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    ExitCode::from(code as u8)
}
