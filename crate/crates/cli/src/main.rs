mod args;
mod cmd;
mod config;
mod report;
mod reproduce;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command, Format, SelfpowerCmd, WaringCmd};
use config::RunConfig;
use report::{CliError, CliResult, Report};

fn dispatch(cli: &Cli, cfg: &RunConfig) -> CliResult<(Report, Format)> {
    let mut fallback = Format::Text;
    let report = match &cli.command {
        Command::Waring(c) => {
            if let WaringCmd::Reps { json: true, .. } = c {
                fallback = Format::Json;
            }
            cmd::waring::run(c, cfg)?
        }
        Command::Covering(c) => cmd::covering::run(c, cfg)?,
        Command::Selfpower(c) => {
            if let SelfpowerCmd::Search { csv: true, .. } = c {
                fallback = Format::Csv;
            }
            cmd::selfpower::run(c, cfg)?
        }
        Command::Sturmian(c) => cmd::sturmian::run(c, cfg)?,
        Command::Reproduce(r) => reproduce::run(&r.out, cfg)?,
    };
    Ok((report, cfg.format_or(fallback)))
}

fn execute(cli: &Cli) -> CliResult<bool> {
    let cfg = RunConfig::from_opts(&cli.global)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| CliError::Internal(e.to_string()))?;
    let (report, format) = pool.install(|| dispatch(cli, &cfg))?;
    let rendered = report.render(format)?;
    match &cfg.output {
        Some(path) => std::fs::write(path, rendered).map_err(|e| CliError::io(path, e))?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(rendered.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::io(std::path::Path::new("<stdout>"), e))?;
        }
    }
    Ok(report.ok)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(2),
            };
        }
    };
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
