//! E_m1m2 against temperature and the temperature where it vanishes.

use magnomech::config::load_preset;
use magnomech::mode::ModePair;
use magnomech::sweep::DEFAULT_TC_TOL;
use magnomech::{critical_temperature, temperature_curve};

fn main() -> magnomech::Result<()> {
    let cfg = load_preset("fig3b")?;
    let temps: Vec<f64> = (0..=10).map(|k| 0.025 * k as f64).collect();
    let values = temperature_curve(&cfg.params, &cfg.constants, &temps, ModePair::magnons())?;
    for (t, e) in temps.iter().zip(&values) {
        println!("T = {:>6.1} mK  E_m1m2 = {e:.5}", t * 1e3);
    }
    let tc = critical_temperature(&cfg.params, &cfg.constants, ModePair::magnons(), 0.01, 0.5, DEFAULT_TC_TOL)?;
    println!("T_c = {:.1} mK", tc * 1e3);
    Ok(())
}
