//! Mean fields for the effective parameterization and for an equivalent
//! physical drive, showing the bistable branches of the latter.

use magnomech::config::{load_preset, to_hz};
use magnomech::steady::solve;
use magnomech::system::DriveStrength;
use magnomech::Drive;

fn main() -> magnomech::Result<()> {
    let cfg = load_preset("fig2_baseline")?;
    let c = cfg.constants;
    let effective = solve(&cfg.params, &c)?;
    println!("effective drive");
    println!("  <a>  = {:.4e}", effective.a_avg);
    println!("  <m1> = {:.4e}", effective.m1_avg);
    println!("  <m2> = {:.4e}", effective.m2_avg);
    println!("  <q>  = {:.4e}", effective.q_avg);
    println!("  G/2pi = {:.4e} Hz, Omega/2pi = {:.4e} Hz", to_hz(effective.g_eff), to_hz(effective.rabi));

    let mut physical = cfg.params.clone();
    let delta_1 = effective.delta_1_tilde - physical.g_0 * effective.q_avg;
    physical.drive = Drive::Physical { delta_1, strength: DriveStrength::Rabi(effective.rabi) };
    let amps = solve(&physical, &c)?;
    println!("physical drive with the back-solved Omega");
    println!("  Delta1~/2pi = {:.6e} Hz (effective {:.6e} Hz)", to_hz(amps.delta_1_tilde), to_hz(effective.delta_1_tilde));
    println!("  G/2pi = {:.6e} Hz, bistable = {}", to_hz(amps.g_eff), amps.bistable);
    Ok(())
}
