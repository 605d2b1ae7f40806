//! E_m1m2 against g2/g1 and G/g1.

use magnomech::config::load_preset;
use magnomech::mode::ModePair;
use magnomech::{sweep, AxisSpec, Knob};

fn main() -> magnomech::Result<()> {
    let cfg = load_preset("fig2d")?;
    let axes = [
        AxisSpec::new(Knob::G2OverG1, 0.1, 2.0, 11)?,
        AxisSpec::new(Knob::GOverG1, 0.1, 2.0, 11)?,
    ];
    let result = sweep(&cfg.params, &cfg.constants, &axes, ModePair::magnons(), cfg.thresholds)?;
    print!("g2\\G  ");
    for x in axes[1].values() {
        print!("{x:>7.2}");
    }
    println!();
    for (i, r) in axes[0].values().iter().enumerate() {
        print!("{r:>6.2}");
        for j in 0..axes[1].points {
            let v = result.get(&[i, j]);
            if v.is_nan() {
                print!("{:>7}", "unst");
            } else {
                print!("{v:>7.3}");
            }
        }
        println!();
    }
    Ok(())
}
