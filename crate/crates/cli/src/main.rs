use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use photonic_tmm_cli::{exit, parse_config, run, Command, RunError, THREADS_ENV};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CommandArg {
    /// T, R and classical T over the configured frequency range.
    Spectrum,
    /// Density and current along the stack at one frequency.
    Profile,
    /// Band gaps and tunnelling decay lengths.
    Bandgap,
    /// Quantum/classical and conservation checks; exits 1 on failure.
    Validate,
}

impl From<CommandArg> for Command {
    fn from(c: CommandArg) -> Self {
        match c {
            CommandArg::Spectrum => Command::Spectrum,
            CommandArg::Profile => Command::Profile,
            CommandArg::Bandgap => Command::Bandgap,
            CommandArg::Validate => Command::Validate,
        }
    }
}

/// Photon transmission, density and current in 1D photonic crystals.
#[derive(Debug, Parser)]
#[command(name = "photonic-tmm", version)]
struct Cli {
    command: CommandArg,
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output directory (overrides `output.directory`).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write SVG plots.
    #[arg(long)]
    svg: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(exit::USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };

    if let Ok(value) = std::env::var(THREADS_ENV) {
        match value.trim().parse::<usize>() {
            Ok(n) if n > 0 => {
                photonic_tmm::exec::init_thread_pool(n);
            }
            _ => {
                eprintln!("error: {THREADS_ENV} must be a positive integer, got `{value}`");
                return ExitCode::from(exit::USAGE);
            }
        }
    }

    let text = match std::fs::read(&cli.config) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", cli.config.display());
            return ExitCode::from(exit::IO);
        }
    };
    let mut config = match parse_config(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}: {e}", cli.config.display());
            return ExitCode::from(exit::USAGE);
        }
    };
    if let Some(out) = cli.out {
        config.output.directory = out;
    }
    config.output.emit_svg |= cli.svg;

    match run(&config, cli.command.into()) {
        Ok(outcome) => {
            if let Some(report) = &outcome.report {
                print!("{report}");
            }
            for f in &outcome.files {
                eprintln!("wrote {}", f.display());
            }
            if outcome.passed {
                ExitCode::from(exit::SUCCESS)
            } else {
                ExitCode::from(exit::PROPERTY_FAILURE)
            }
        }
        Err(e @ RunError::Io { .. }) => {
            eprintln!("error: {e}");
            ExitCode::from(exit::IO)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit::USAGE)
        }
    }
}
