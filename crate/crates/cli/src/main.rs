use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cmhecke::output::{human, to_json, write_csv};
use cmhecke::verify::{format_line, select, VerifyConfig};
use cmhecke::{analyze, exit_code, table};
use cmhecke_core::NumericsConfig;

#[derive(Parser)]
#[command(name = "cmhecke", version)]
#[command(about = "Simplest Hecke characters of imaginary quadratic fields: analysis, tables, self-checks")]
struct Cli {
    /// Absolute error target for the numerics (verify: floor for every tolerance)
    #[arg(long, global = true, env = "CMHECKE_TOL")]
    tol: Option<f64>,

    /// Cap on the number of terms in any single series
    #[arg(long, global = true, default_value_t = NumericsConfig::default().max_terms)]
    max_terms: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one discriminant D (the field Q(sqrt(-D)))
    Analyze {
        #[arg(long)]
        disc: u64,
        /// Emit JSON instead of text
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One row per fundamental D in the range and simplest character
    Table {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        /// CSV output (the default)
        #[arg(long, conflicts_with = "json")]
        csv: bool,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the verification suite
    Verify {
        /// Run one criterion, by name or number
        #[arg(long)]
        only: Option<String>,
    },
}

fn emit(out: Option<&PathBuf>, text: &[u8]) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text),
    }
}

fn numerics(cli: &Cli) -> Result<NumericsConfig, String> {
    let mut cfg = NumericsConfig { max_terms: cli.max_terms, ..NumericsConfig::default() };
    if let Some(t) = cli.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(format!("--tol must be a positive number, got {t}"));
        }
        cfg.target_abs_error = t;
    }
    Ok(cfg)
}

fn run(cli: Cli) -> Result<ExitCode, (u8, String)> {
    let usage = |m: String| (2, m);
    let io_err = |e: io::Error| (1, format!("write failed: {e}"));
    match &cli.command {
        Command::Analyze { disc, json, out } => {
            let cfg = numerics(&cli).map_err(usage)?;
            let rec = analyze(*disc, &cfg).map_err(|e| (exit_code(&e), e.to_string()))?;
            let text = if *json { to_json(&rec) + "\n" } else { human(&rec) };
            emit(out.as_ref(), text.as_bytes()).map_err(io_err)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Table { from, to, csv: _, json, out } => {
            if !(3 <= *from && from <= to && *to <= 10_000) {
                return Err(usage(format!("need 3 <= from <= to <= 10000, got {from}..{to}")));
            }
            let cfg = numerics(&cli).map_err(usage)?;
            let (records, failed) = table(*from, *to, &cfg);
            let mut buf = Vec::new();
            if *json {
                buf.extend_from_slice((to_json(&records) + "\n").as_bytes());
            } else {
                write_csv(&mut buf, &records).map_err(|e| (1, e.to_string()))?;
            }
            emit(out.as_ref(), &buf).map_err(io_err)?;
            let mut code = 0;
            for (d, e) in &failed {
                eprintln!("D = {d}: {e}");
                code = code.max(exit_code(e));
            }
            Ok(ExitCode::from(code))
        }
        Command::Verify { only } => {
            let cfg = VerifyConfig { tol: cli.tol, max_terms: cli.max_terms };
            let criteria = select(only.as_deref()).ok_or_else(|| usage(format!("no criterion named {:?}", only)))?;
            let mut all = true;
            for c in criteria {
                let o = c.run(&cfg);
                all &= o.passed;
                println!("{}", format_line(c, &o));
            }
            Ok(if all { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
