mod args;
mod commands;
mod error;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use error::CliResult;
use output::Sink;

fn run(cli: Cli) -> CliResult {
    let mut sink = Sink::open(cli.format, cli.out.as_deref())?;
    let result = match &cli.command {
        Command::Stats { permutation } => commands::stats(&mut sink, permutation),
        Command::Dist { first, second } => commands::dist(&mut sink, first, second),
        Command::Pi0 { n } => commands::pi0(&mut sink, *n),
        Command::Bounds { n, range } => {
            let ns = match (n, range) {
                (Some(n), _) => *n..=*n,
                (None, Some(r)) => r.clone(),
                (None, None) => unreachable!("clap requires --n or --range"),
            };
            commands::bounds_table(&mut sink, ns)
        }
        Command::Bfs {
            n,
            mode,
            generators,
            search,
            dump,
        } => commands::bfs_command(&mut sink, *n, *mode, *generators, search, dump.as_deref()),
        Command::Verify {
            suite,
            range,
            seed,
            cases,
            search,
        } => commands::verify(&mut sink, *suite, range.clone(), *seed, *cases, search),
        Command::ExportGraph { n, generators } => {
            commands::export_graph(&mut sink, *n, *generators)
        }
    };
    // flush whatever was written, including a failing verification report
    let flushed = sink.finish();
    result.and(flushed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
