//! `stabrank` command-line tool. Exit codes: 0 success, 1 domain error,
//! 2 usage error.

mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use commands::Ctx;

const DEFAULT_TOL: f64 = 1e-9;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let threads = cli.common.threads.filter(|&t| t > 0).unwrap_or_else(stabrank::default_threads);
    // Only fails if a pool already exists, which cannot happen here.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    let ctx = Ctx { threads, seed: cli.common.seed, format: cli.common.format, out: cli.common.out.clone() };
    let result = commands::run(&cli.command, &ctx).and_then(|v| {
        let v = if cli.common.float { output::to_float(v, cli.common.tol.unwrap_or(DEFAULT_TOL)) } else { v };
        let text = output::render(&v, cli.common.format)?;
        match (&cli.common.out, &cli.command) {
            (Some(path), cmd) if !matches!(cmd, args::Command::Enumerate { .. }) => {
                std::fs::write(path, text).map_err(|e| anyhow::anyhow!("writing {}: {e}", path.display()))
            }
            _ => {
                print!("{text}");
                Ok(())
            }
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
