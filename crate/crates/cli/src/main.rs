mod args;
mod commands;
mod io;

use std::process::ExitCode;
use std::time::{Instant, SystemTime};

use clap::Parser;
use nonavg_core::Budgets;

use args::{Cli, GlobalArgs};
use io::{write_manifest, write_payload, CliError, RunManifest};

fn budgets_from(global: &GlobalArgs) -> Budgets {
    let mut b = Budgets::default();
    if let Some(cells) = global.max_cells {
        b.max_tuples = cells;
        b.max_points = cells;
    }
    if let Some(range) = global.max_sum_range {
        b.max_sum_cells = range;
    }
    if let Some(retries) = global.retries {
        b.retries = retries;
    }
    if let Some(n) = global.max_search_n {
        b.max_h_n = n;
        b.max_pair_n = n;
    }
    b
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let budgets = budgets_from(&cli.global);
    let output = cli.global.output.clone();
    let started = SystemTime::now();
    let clock = Instant::now();

    let result = commands::run(&cli.command, &budgets);
    let mut manifest = RunManifest::new(
        std::env::args().collect(),
        budgets,
        started,
        clock.elapsed(),
        &output,
    );
    let code = match result {
        Ok(outcome) => {
            manifest.seed = outcome.seed;
            let written = write_payload(&output, &outcome.payload).and_then(|_| {
                if output == "-" {
                    Ok(())
                } else {
                    write_manifest(&manifest)
                }
            });
            match written {
                Ok(()) if outcome.holds => 0,
                Ok(()) => 1,
                Err(e) => report_error(&e),
            }
        }
        Err(e) => {
            if let CliError::Core(err @ nonavg_core::Error::Budget { .. }) = &e {
                manifest.budgets_hit.push(err.to_string());
                if output != "-" {
                    if let Err(me) = write_manifest(&manifest) {
                        eprintln!("{me}");
                    }
                }
            }
            report_error(&e)
        }
    };
    ExitCode::from(code)
}

fn report_error(e: &CliError) -> u8 {
    eprintln!("nonavg: {e}");
    let line = serde_json::json!({ "error": e.to_string(), "kind": e.kind() });
    eprintln!("{line}");
    e.exit_code()
}
