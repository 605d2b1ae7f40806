//! Runs a config file through the same path as the command-line tool and
//! prints the JSON document. Usage: run_config [config.toml] [preset]

use magnomech::config::{load_preset, parse_config, CommandKind};
use magnomech::report;

fn main() -> magnomech::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args.next();
    let preset = args.next();
    let cfg = match (&path, &preset) {
        (Some(path), preset) => parse_config(&std::fs::read_to_string(path)?, preset.as_deref())?,
        (None, _) => load_preset("fig3b")?,
    };
    let command = report::resolve_command(&cfg, Some(cfg.command.unwrap_or(CommandKind::Tcrit)))?;
    let outcome = report::run(&cfg, command)?;
    let doc = report::to_json(&cfg, &outcome)?;
    println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
    Ok(())
}
