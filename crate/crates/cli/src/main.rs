mod args;
mod commands;
mod experiment;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::{Ctx, Outcome};
use output::{write_atomic, CliResult};

fn dispatch(cli: &Cli) -> CliResult<Outcome> {
    let ctx = Ctx {
        format: cli.format,
        limits: if cli.unsafe_limits {
            sepsplit::Limits::unlimited()
        } else {
            sepsplit::Limits::default()
        },
    };
    match &cli.command {
        Command::Construct {
            what,
            params,
            input,
            verify,
        } => commands::construct(&ctx, *what, params, input.as_deref(), *verify),
        Command::Verify { what, params, input } => commands::verify(&ctx, *what, params, input),
        Command::Count { what, params, mode } => commands::count(&ctx, *what, params, *mode),
        Command::Search { property, params, .. } => commands::search(&ctx, property, params),
        Command::Check {
            what,
            params,
            families,
            samples,
        } => commands::check(&ctx, *what, params, *families, *samples),
        Command::Experiment { spec, .. } => {
            let (code, text) = experiment::run_file(spec, cli.out.as_deref(), cli.unsafe_limits)?;
            Ok(Outcome {
                body: text,
                code,
                note: None,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = dispatch(&cli).and_then(|o| {
        // Experiments write their own files; --out there names the table.
        let to_file = !matches!(cli.command, Command::Experiment { .. });
        match (&cli.out, to_file) {
            (Some(path), true) => write_atomic(path, &o.body)?,
            _ => {
                let _ = std::io::stdout().write_all(o.body.as_bytes());
            }
        }
        if let Some(note) = &o.note {
            eprintln!("{note}");
        }
        Ok(o.code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
