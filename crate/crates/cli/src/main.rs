use std::process::ExitCode;

use clap::Parser;
use nefmirror_cli::{render, run, write_out, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let outcome = run(&cli).and_then(|report| {
        if let Some(path) = &cli.out {
            write_out(&report, path)?;
        }
        Ok(report)
    });
    match outcome {
        Ok(report) => {
            print!("{}", render(&report, cli.json));
            if cli.json {
                println!();
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("nefmirror: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
