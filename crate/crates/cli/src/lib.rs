//! Batch driver for the `borosmoll` binary.

pub mod args;
pub mod commands;
pub mod output;

use std::ffi::OsString;
use std::time::Instant;

use clap::Parser;
use serde_json::{json, Value};

use args::{Cli, Command};
use commands::{Outcome, UsageError};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Counterexamples printed per failing report.
const SHOWN_VIOLATIONS: usize = 5;

pub fn run<I, T>(argv: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code() as u8;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("borosmoll: cannot start {} workers: {e}", cli.jobs);
            return EXIT_USAGE;
        }
    };
    let name = cli.command.name();
    let dest = output::destination(cli.out.as_deref(), name, cli.format);
    let started = Instant::now();
    let result: Result<Outcome, UsageError> = pool.install(|| match &cli.command {
        Command::Coeffs(a) => commands::coeffs(a),
        Command::Verify(a) => commands::verify(a),
        Command::Roots(a) => commands::roots(a),
        Command::Depth(a) => commands::depth(a),
    });
    let mut outcome = match result {
        Ok(o) => o,
        Err(UsageError(msg)) => {
            eprintln!("borosmoll {name}: {msg}");
            return EXIT_USAGE;
        }
    };
    if let Some(text) = outcome.listing.take() {
        print!("{text}");
        return EXIT_PASS;
    }

    let pass = outcome.failed.is_empty();
    let args = match &cli.command {
        Command::Coeffs(a) => serde_json::to_value(a),
        Command::Verify(a) => serde_json::to_value(a),
        Command::Roots(a) => serde_json::to_value(a),
        Command::Depth(a) => serde_json::to_value(a),
    }
    .expect("arguments serialize");
    let config = json!({
        "command": name,
        "args": args,
        "format": cli.format,
        "out": dest.as_ref().map(|p| p.display().to_string()),
        "jobs": cli.jobs,
    });
    let summary = json!({
        "record": "summary",
        "command": name,
        "config": config,
        "records": outcome.records.len(),
        "failed": outcome.failed.len(),
        "pass": pass,
        "wall_time_us": started.elapsed().as_micros() as u64,
    });
    let mut records: Vec<Value> = std::mem::take(&mut outcome.records);
    records.push(summary);

    let text = match output::render(&records, cli.format) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("borosmoll: csv: {e}");
            return EXIT_USAGE;
        }
    };
    if let Err(e) = output::emit(&text, dest.as_deref()) {
        eprintln!("borosmoll: cannot write output: {e}");
        return EXIT_USAGE;
    }
    for r in &outcome.failed {
        eprintln!("FAIL {} m={}: {} violation(s)", r.theorem, r.m, r.violations.len());
        for v in r.violations.iter().take(SHOWN_VIOLATIONS) {
            match v.m {
                Some(m) => eprintln!("  m={m} i={}: {} vs {}", v.i, v.lhs, v.rhs),
                None => eprintln!("  i={}: {} vs {}", v.i, v.lhs, v.rhs),
            }
        }
    }
    if pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}
