#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod commands;
mod error;
mod output;
mod validate;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::{DynamicsArgs, SweepArgs};
use error::CliError;

fn run(cli: Cli) -> Result<(), CliError> {
    let (table, out) = match cli.command {
        Command::Band { model, points, out } => (commands::band(&model, points)?, out),
        Command::Bound {
            model,
            profile,
            out,
        } => (commands::bound(&model, profile)?, out),
        Command::Scatter {
            model,
            k,
            points,
            out,
        } => (commands::scatter(&model, k, points)?, out),
        Command::Chirality { model, out } => (commands::chirality_table(&model)?, out),
        Command::Dynamics {
            model,
            t_max,
            dt,
            nk,
            method,
            sites,
            out,
        } => {
            let a = DynamicsArgs {
                t_max,
                dt,
                nk,
                method,
                sites,
            };
            (commands::dynamics(&model, &a)?, out)
        }
        Command::Sweep {
            model,
            axis,
            start,
            stop,
            points,
            quantity,
            out,
        } => {
            let a = SweepArgs {
                axis,
                start,
                stop,
                points,
                quantity,
            };
            (commands::sweep(&model, &a)?, out)
        }
        Command::Validate {
            seed,
            tolerance_scale,
            out,
        } => {
            if !(tolerance_scale >= 0.0) || !tolerance_scale.is_finite() {
                return Err(CliError::Usage(
                    "--tolerance-scale must be a finite non-negative number".into(),
                ));
            }
            let report = validate::run(seed, tolerance_scale);
            let json = serde_json::to_string_pretty(&report).expect("report serialises");
            output::emit(out.out.as_deref(), |w| writeln!(w, "{json}"))?;
            let failed = report.failures();
            if !failed.is_empty() {
                return Err(CliError::Validation(failed.join(", ")));
            }
            return Ok(());
        }
    };
    table.emit(out.out.as_deref())?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("cra: {e}");
            e.exit_code()
        }
    }
}
