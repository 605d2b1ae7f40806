//! Logarithmic negativity of every mode pair at one operating point.
//! Optional argument: a TOML config layered over the baseline preset.

use magnomech::config::{load_preset, parse_config};
use magnomech::evaluate_point;

fn main() -> magnomech::Result<()> {
    let cfg = match std::env::args().nth(1) {
        Some(path) => parse_config(&std::fs::read_to_string(&path)?, Some("fig2_baseline"))?,
        None => load_preset("fig2_baseline")?,
    };
    let report = evaluate_point(&cfg.params, &cfg.constants, cfg.thresholds)?;
    println!("stable: {}", report.stability.stable);
    println!("{:<6} {:>12} {:>12}", "pair", "nu_minus", "E_N");
    for e in &report.entanglement {
        println!("{:<6} {:>12.6} {:>12.6}", e.pair.to_string(), e.nu_minus, e.log_negativity);
    }
    for w in &report.warnings {
        println!("warning: {w}");
    }
    Ok(())
}
