//! Critical temperature of the magnon pair as the magnon damping grows,
//! with the cavity damping held at five times the magnon damping.

use magnomech::config::{hz, load_preset};
use magnomech::mode::ModePair;
use magnomech::sweep::{critical_temperature_curve, DEFAULT_TC_TOL};
use magnomech::{AxisSpec, Knob};

fn main() -> magnomech::Result<()> {
    let cfg = load_preset("fig3c")?;
    let axis = AxisSpec::new(Knob::KappaMagnon { cavity_ratio: Some(5.0) }, hz(0.6e6), hz(3.0e6), 9)?;
    let result = critical_temperature_curve(
        &cfg.params,
        &cfg.constants,
        &axis,
        ModePair::magnons(),
        0.001,
        0.5,
        DEFAULT_TC_TOL,
    )?;
    for (k, kappa) in axis.values().iter().enumerate() {
        println!("kappa_m/2pi = {:.2} MHz  T_c = {:.1} mK", kappa / hz(1.0e6), result.get(&[k]) * 1e3);
    }
    Ok(())
}
