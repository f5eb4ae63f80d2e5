//! Reports and table reproduction on top of `ogc-core`.

pub mod args;
pub mod commands;
pub mod error;
pub mod scan;
pub mod tables;
pub mod verify;

use std::io::Write;

use serde_json::Value;

use args::{Cli, Command, Format};
use error::CliResult;

/// An emitted artifact. `passed` is false when a verification failed.
#[derive(Debug, Clone)]
pub struct Report {
    pub text: String,
    pub json: Value,
    pub passed: bool,
}

impl Report {
    pub fn ok(text: String, json: Value) -> Self {
        Report { text, json, passed: true }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("serializable");
                s.push('\n');
                s
            }
        }
    }
}

pub fn execute(cli: &Cli) -> CliResult<Report> {
    let jobs = cli.jobs;
    match &cli.command {
        Command::Classes { k, class, j } => commands::classes(*k, *class, *j),
        Command::Koszul { k, n, max_index } => commands::koszul(*k, *n, *max_index),
        Command::Present { k, n, module, grading, cap } => commands::present(*k, *n, *module, *grading, *cap),
        Command::Charrank { k, n } => commands::charranks(*k, *n, jobs),
        Command::Ext { k, n } => commands::ext(*k, *n),
        Command::Verify { suite, t_max } => verify::run(*suite, *t_max),
        Command::Tables { table, emit, golden } => tables::run(table, *emit, golden.as_deref(), jobs),
        Command::Scan { k, n } => scan::run(*k, *n, jobs),
    }
}

/// Runs the command and writes its artifact; returns the process exit code.
pub fn run(cli: &Cli) -> CliResult<i32> {
    let report = execute(cli)?;
    let body = report.render(cli.format);
    match &cli.out {
        Some(path) => std::fs::write(path, body)?,
        None => std::io::stdout().write_all(body.as_bytes())?,
    }
    Ok(if report.passed { 0 } else { 1 })
}
