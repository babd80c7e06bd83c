mod args;
mod commands;
mod config;
mod report;

use std::process::ExitCode;
use std::sync::mpsc;
use std::thread;
use std::time::Duration;

use clap::Parser;
use nilgrowth::lattice::DEFAULT_POINT_BUDGET;
use nilgrowth::Error;

use args::Cli;
use commands::Budgets;

const DEFAULT_ELEMENT_BUDGET: u64 = 10_000_000;
const BUDGET_ENV: &str = "NILGROWTH_BUDGET_POINTS";

fn budgets(common: &args::Common) -> Result<Budgets, Error> {
    let points = match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::usage(format!("{BUDGET_ENV} must be a non-negative integer, got `{v}`")))?,
        Err(_) => common.budget_points.unwrap_or(DEFAULT_POINT_BUDGET),
    };
    Ok(Budgets {
        points,
        elements: common.budget_elements.unwrap_or(DEFAULT_ELEMENT_BUDGET),
    })
}

fn execute(cli: Cli) -> Result<Option<String>, Error> {
    let common = cli.command.common().clone();
    let b = budgets(&common)?;
    let (tx, rx) = mpsc::channel();
    let command = cli.command;
    thread::spawn(move || {
        let _ = tx.send(commands::run(&command, &b));
    });
    let report = match common.time_limit {
        Some(secs) => rx
            .recv_timeout(Duration::from_secs(secs))
            .map_err(|_| Error::resource("wall-clock seconds", secs))?,
        None => rx.recv().expect("worker sends a result"),
    }?;
    report::emit(&report, common.format, common.output.as_deref())?;
    Ok(report.violation)
}

fn main() -> ExitCode {
    let argv = match config::merge(std::env::args().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("nilgrowth: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let cli = Cli::parse_from(argv);
    match execute(cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(counterexample)) => {
            let e = Error::BoundViolation(counterexample);
            eprintln!("nilgrowth: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("nilgrowth: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
