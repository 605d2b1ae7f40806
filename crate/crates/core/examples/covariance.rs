//! Steady-state covariance matrix from the Lyapunov solver, checked against
//! direct time integration from the vacuum.

use magnomech::config::load_preset;
use magnomech::lyapunov::{default_step, lyapunov_residual};
use magnomech::steady::solve;
use magnomech::{build_diffusion, build_drift, check_stability, integrate_to_steady, solve_steady};

fn main() -> magnomech::Result<()> {
    let cfg = load_preset("fig2_baseline")?;
    let (p, c) = (&cfg.params, &cfg.constants);
    let amps = solve(p, c)?;
    let drift = build_drift(p, &amps);
    let diffusion = build_diffusion(p, c)?;
    let stability = check_stability(&drift)?;
    println!("max Re(lambda) = {:.4e} rad/s", stability.max_re_eig);

    let v = solve_steady(&drift, &diffusion)?;
    println!("V =\n{:.5}", v.matrix());
    let residual = lyapunov_residual(&drift, &diffusion, v.matrix());
    println!("residual / norm(D) = {:.3e}", residual / diffusion.matrix().norm());

    let horizon = 40.0 / stability.max_re_eig.abs();
    let w = integrate_to_steady(&drift, &diffusion, horizon, default_step(&drift))?;
    let rel = (w.matrix() - v.matrix()).norm() / v.matrix().norm();
    println!("RK4 relative difference = {rel:.3e}");
    Ok(())
}
