//! E_m1m2 over the (Delta_a, Delta_2) plane, coarse grid, printed as a table.

use magnomech::config::load_preset;
use magnomech::mode::ModePair;
use magnomech::{sweep, AxisSpec, Knob};

fn main() -> magnomech::Result<()> {
    let cfg = load_preset("fig2a")?;
    let wb = cfg.params.omega_b;
    let axes = [
        AxisSpec::new(Knob::DeltaA, -2.0 * wb, 0.0, 11)?,
        AxisSpec::new(Knob::Delta2, -2.0 * wb, 0.0, 11)?,
    ];
    let result = sweep(&cfg.params, &cfg.constants, &axes, ModePair::magnons(), cfg.thresholds)?;
    print!("Da\\D2 ");
    for d2 in axes[1].values() {
        print!("{:>7.2}", d2 / wb);
    }
    println!();
    for (i, da) in axes[0].values().iter().enumerate() {
        print!("{:>6.2}", da / wb);
        for j in 0..axes[1].points {
            print!("{:>7.3}", result.get(&[i, j]));
        }
        println!();
    }
    let best = result.argmax().expect("some stable point");
    let at = result.coordinates(&best);
    println!("max {:.4} at ({:.3}, {:.3}) omega_b", result.max().unwrap(), at[0] / wb, at[1] / wb);
    Ok(())
}
