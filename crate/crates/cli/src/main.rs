use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use conecert::Certificate;
use conecert_cli::demos::{demo_names, demo_scenario};
use conecert_cli::{emit_report, run, run_scenario_file, summary, with_threads, CliError};

#[derive(Parser)]
#[command(name = "certifier", version, about = "Numerical periodicity certificates for monotone maps on cones")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file and write its report.
    Run {
        scenario: PathBuf,
        /// Output path prefix (overrides the scenario's `output` field).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the scenario seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Worker threads for point-level parallelism.
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Run a bundled example system end to end.
    Demo {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(demo_names().iter().copied()))]
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Re-check a serialized certificate independently.
    Validate { certificate: PathBuf },
}

fn execute(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Run { scenario, out, seed, threads } => {
            let (report, written) = run_scenario_file(&scenario, out.as_deref(), seed, threads)?;
            print!("{}", summary(&report));
            for p in written.iter().take(2) {
                println!("wrote {}", p.display());
            }
            Ok(report.exit_status)
        }
        Command::Demo { name, out, threads } => {
            let loaded = demo_scenario(&name)?.load()?;
            let report = with_threads(threads, || run(&loaded))?;
            print!("{}", summary(&report));
            if let Some(prefix) = out {
                for p in emit_report(&report, &prefix)?.iter().take(2) {
                    println!("wrote {}", p.display());
                }
            }
            Ok(report.exit_status)
        }
        Command::Validate { certificate } => {
            let text = std::fs::read_to_string(&certificate)
                .map_err(|source| CliError::Io { path: certificate.clone(), source })?;
            let cert = Certificate::from_json(&text).map_err(|e| CliError::Parse {
                path: certificate.display().to_string(),
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            })?;
            let report = cert.validate();
            for c in &report.checks {
                let mark = if c.passed { "ok  " } else { "FAIL" };
                if c.detail.is_empty() {
                    println!("[{mark}] {}", c.name);
                } else {
                    println!("[{mark}] {} ({})", c.name, c.detail);
                }
            }
            let verdict = if report.passed() { "valid" } else { "INVALID" };
            println!("certificate {verdict}: r = {}, residual = {:e}", cert.r, cert.residual);
            Ok(if report.passed() { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
