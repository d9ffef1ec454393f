//! `advtext` command-line interface.
//!
//! Exit codes: 0 on success, 1 for usage errors, 2 for runtime failures.

mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::UsageError;

fn run(cli: Cli) -> anyhow::Result<()> {
    let res = commands::resources(cli.resource_dir.as_deref())?;
    match &cli.command {
        Command::Attack(a) => commands::attack(a, &res),
        Command::Augment(a) => commands::augment(a, &res),
        Command::Train(a) => commands::train_cmd(a, &res),
        Command::Eval(a) => commands::eval(a),
        Command::ListRecipes(a) => commands::list_recipes(a, &res),
    }
}

fn is_usage(e: &anyhow::Error) -> bool {
    use advtext::Error;
    e.is::<UsageError>()
        || matches!(
            e.downcast_ref::<Error>(),
            Some(Error::UnknownRecipe(_) | Error::UnknownComponent(_) | Error::UnsupportedComponent { .. } | Error::Config(_))
        )
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if is_usage(&e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
