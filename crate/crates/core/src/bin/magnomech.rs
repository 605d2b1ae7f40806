use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use magnomech::config::{self, CommandKind, Format};
use magnomech::report;
use magnomech::Error;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Command {
    Point,
    Sweep,
    Tcurve,
    Tcrit,
    Audit,
}

impl From<Command> for CommandKind {
    fn from(c: Command) -> Self {
        match c {
            Command::Point => CommandKind::Point,
            Command::Sweep => CommandKind::Sweep,
            Command::Tcurve => CommandKind::Tcurve,
            Command::Tcrit => CommandKind::Tcrit,
            Command::Audit => CommandKind::Audit,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
}

/// Steady-state magnon entanglement in a cavity magnomechanical system.
#[derive(Debug, Parser)]
#[command(version)]
struct Cli {
    command: Command,
    /// TOML run configuration (frequencies as ω/2π in Hz).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<OutFormat>,
    /// Bundled preset used as the base layer (fig2_baseline, fig2a, ..., fig3c).
    #[arg(long)]
    preset: Option<String>,
    /// Worker threads for sweeps; defaults to all cores.
    #[arg(long)]
    threads: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = CommandKind::from(cli.command);
    match run(&cli, command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", report::error_json(Some(command), &e));
            ExitCode::from(if matches!(e, Error::Config { .. }) { 2 } else { 1 })
        }
    }
}

fn run(cli: &Cli, command: CommandKind) -> magnomech::Result<()> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(Error::config("--threads", "must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::config("--threads", e.to_string()))?;
    }
    let cfg = match (&cli.config, &cli.preset) {
        (Some(path), preset) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::config(path.display().to_string(), e.to_string()))?;
            config::parse_config(&text, preset.as_deref())?
        }
        (None, Some(preset)) => config::load_preset(preset)?,
        (None, None) => return Err(Error::config("--config", "give --config and/or --preset")),
    };
    let format = match cli.format {
        Some(OutFormat::Csv) => Format::Csv,
        Some(OutFormat::Json) => Format::Json,
        None => cfg.format,
    };
    let out = cli.out.clone().or_else(|| cfg.out.clone());
    let outcome = report::run(&cfg, command)?;
    report::emit(&cfg, &outcome, format, out.as_deref())
}
