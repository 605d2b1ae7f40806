//! Spin count, Kerr coefficient and low-excitation audit for the baseline
//! operating point.

use magnomech::config::{load_preset, to_hz};
use magnomech::steady::solve;
use magnomech::{audit_validity, build_drift};

fn main() -> magnomech::Result<()> {
    let cfg = load_preset("fig2_baseline")?;
    let (p, c) = (&cfg.params, &cfg.constants);
    println!("diameter        {:.3e} m", p.sphere.diameter);
    println!("spins N         {:.4e}", p.sphere.n_spins);
    println!("Kerr K/2pi      {:.4e} Hz", to_hz(p.sphere.kerr_coeff));

    let amps = solve(p, c)?;
    let report = audit_validity(p, &amps, &build_drift(p, &amps), c, cfg.thresholds);
    println!("|<m1>|          {:.4e}", amps.m1_avg.norm());
    println!("<m1+ m1>/2Ns    {:.3e}", report.excitation_ratio_1);
    println!("K|m1|^3/|Omega| {:.3e}", report.kerr_ratio);
    println!("Omega/2pi       {:.4e} Hz", to_hz(amps.rabi));
    println!("valid           {}", report.is_valid());
    for v in &report.violations {
        println!("  violation: {v}");
    }
    Ok(())
}
