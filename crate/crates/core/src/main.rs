use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use enclose::cli::{emit_results, preset, run, CliError, Format, Overrides, RunConfig, PRESETS};

#[derive(Parser)]
#[command(name = "enclose", version, about = "Guaranteed eigenvalue enclosures")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a configuration file or a bundled preset.
    Run {
        config: Option<PathBuf>,
        #[arg(long)]
        preset: Option<String>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        max_level: Option<u32>,
        /// Highest basis degree tried.
        #[arg(long)]
        basis_degree: Option<usize>,
        /// Print work counts.
        #[arg(long)]
        effort: bool,
    },
    /// List the bundled presets.
    Presets,
    /// Print a preset's configuration.
    Show { name: String },
}

fn load(config: Option<PathBuf>, name: Option<String>) -> Result<RunConfig, CliError> {
    match (config, name) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(&path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            RunConfig::parse(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
        }
        (None, Some(name)) => preset(&name),
        _ => Err(CliError::config("run", "give a config file or --preset, not both")),
    }
}

fn main() -> ExitCode {
    match Args::parse().command {
        Command::Presets => {
            for (name, _) in PRESETS {
                println!("{name}");
            }
            ExitCode::SUCCESS
        }
        Command::Show { name } => match PRESETS.iter().find(|(n, _)| *n == name) {
            Some((_, text)) => {
                print!("{text}");
                ExitCode::SUCCESS
            }
            None => {
                eprintln!("error: {}", CliError::UnknownPreset(name));
                ExitCode::from(1)
            }
        },
        Command::Run { config, preset, format, out, max_level, basis_degree, effort } => {
            let result = load(config, preset).and_then(|cfg| {
                let outcome = run(&cfg, &Overrides { max_level, basis_degree })?;
                let text = emit_results(&outcome.report, format, effort);
                match out.or(cfg.out) {
                    Some(p) => std::fs::write(&p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?,
                    None => print!("{text}"),
                }
                Ok(outcome.status)
            });
            match result {
                Ok(status) => ExitCode::from(status.exit_code() as u8),
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
    }
}
