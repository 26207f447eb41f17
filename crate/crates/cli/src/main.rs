use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use horobound_cli::commands::{run, Command};
use horobound_cli::config::{ModelKind, RunConfig, UsageError};

#[derive(Parser, Debug)]
#[command(name = "horobound", version, about = "Horofunction boundary of X × X: checks and experiments")]
struct Cli {
    /// disk or tree
    #[arg(long, global = true)]
    model: Option<String>,
    #[arg(long, global = true)]
    group: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    seed: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    tol: Option<String>,
    #[arg(long = "limit-tol", global = true, allow_hyphen_values = true)]
    limit_tol: Option<String>,
    /// Percentage of each check's nominal sample count
    #[arg(long, global = true, allow_hyphen_values = true)]
    samples: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    rmax: Option<String>,
    /// json or csv
    #[arg(long, global = true)]
    format: Option<String>,
    /// key = value file, overridden by flags
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Record wall time per check
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Run the full check catalog
    Verify,
    /// Classify a sequence such as geodesic:<plus>;<minus>;<offset>
    Classify { sequence: String },
    /// Boundary estimates along an orbit: seed "x;y", stream word:/power:/random:
    Orbit {
        #[arg(value_name = "SEED_POINTS")]
        start: String,
        stream: String,
    },
    /// Proper discontinuity and cocompactness experiments
    Cocompact,
    /// Round trips through the boundary charts
    BoundaryMap,
}

fn config(cli: &Cli) -> Result<RunConfig, UsageError> {
    let mut cfg = RunConfig::new(ModelKind::Disk);
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| UsageError(format!("cannot read config {}: {e}", path.display())))?;
        cfg.apply_file(&text)?;
    }
    let flags = [
        ("model", &cli.model),
        ("group", &cli.group),
        ("seed", &cli.seed),
        ("tol", &cli.tol),
        ("limit_tol", &cli.limit_tol),
        ("samples", &cli.samples),
        ("rmax", &cli.rmax),
        ("format", &cli.format),
    ];
    for (key, value) in flags {
        if let Some(v) = value {
            cfg.set(key, v)?;
        }
    }
    cfg.timings |= cli.timings;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let command = match cli.command {
        Cmd::Verify => Command::Verify,
        Cmd::Classify { ref sequence } => Command::Classify { sequence: sequence.clone() },
        Cmd::Orbit { ref start, ref stream } => Command::Orbit { seed: start.clone(), stream: stream.clone() },
        Cmd::Cocompact => Command::Cocompact,
        Cmd::BoundaryMap => Command::BoundaryMap,
    };
    match config(&cli).and_then(|cfg| run(&cfg, &command)) {
        Ok(out) => {
            let _ = std::io::stdout().write_all(out.text.as_bytes());
            ExitCode::from(if out.pass { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
