use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use sconc::commands::{
    apply_cmd, bound_cmd, decide_cmd, invariants_cmd, simplify_cmd, sweep_cmd, validate_cmd,
};
use sconc::{load_scenario, load_script, Exit, Output};

#[derive(Debug, Parser)]
#[command(name = "sconc", version)]
#[command(about = "Invariants, move scripts and concordance decisions for singular links")]
struct Cli {
    /// Output style. Human output is followed by the machine-readable block.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    /// Write the move trace, when the command produces one, to this file.
    #[arg(long, global = true)]
    trace_out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the scenario state against every structural invariant.
    Validate { scenario: PathBuf },
    /// Print mu, fq, Delta and km.
    Invariants { scenario: PathBuf },
    /// Run a script (the scenario's own unless --script is given).
    Apply {
        scenario: PathBuf,
        #[arg(long)]
        script: Option<PathBuf>,
    },
    /// Eliminate type II circles and reduce to a single Hopf pair.
    Simplify { scenario: PathBuf },
    /// Decide whether the singular concordance can be made embedded.
    Decide { scenario: PathBuf },
    /// Randomized move-invariance sweep.
    Sweep {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        count: usize,
    },
    /// Upper bound on the number of concordance classes.
    Bound { scenario: PathBuf },
}

fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Validate { scenario } => Ok(validate_cmd(&load_scenario(scenario)?)),
        Command::Invariants { scenario } => invariants_cmd(&load_scenario(scenario)?),
        Command::Apply { scenario, script } => {
            let sc = load_scenario(scenario)?;
            let script = match script {
                Some(p) => load_script(p)?,
                None => sc.script.clone(),
            };
            apply_cmd(&sc, &script)
        }
        Command::Simplify { scenario } => simplify_cmd(&load_scenario(scenario)?),
        Command::Decide { scenario } => decide_cmd(&load_scenario(scenario)?),
        Command::Sweep { seed, count } => sweep_cmd(*seed, *count),
        Command::Bound { scenario } => Ok(bound_cmd(&load_scenario(scenario)?)),
    }
}

fn emit(cli: &Cli, out: &Output) -> Result<()> {
    if let (Some(path), Some(trace)) = (&cli.trace_out, &out.trace) {
        let text = serde_json::to_string_pretty(trace)?;
        std::fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    let machine = serde_json::to_string_pretty(&out.machine)?;
    let text = match cli.format {
        Format::Human => format!("{}\n{machine}\n", out.human),
        Format::Machine => format!("{machine}\n"),
    };
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| emit(&cli, &out).map(|()| out.exit));
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            let chain: Vec<String> = e.chain().map(|c| c.to_string()).collect();
            match cli.format {
                Format::Human => eprintln!("error: {}", chain.join(": ")),
                Format::Machine => println!("{}", serde_json::json!({ "error": chain })),
            }
            ExitCode::from(Exit::Error as u8)
        }
    }
}
