//! Entanglement measures on a two-mode squeezed vacuum, where E_N = 2r.

use nalgebra::Matrix4;

use magnomech::log_negativity;

fn main() -> magnomech::Result<()> {
    for r in [0.0f64, 0.25, 0.5, 1.0, 2.0] {
        let c = (2.0 * r).cosh() / 2.0;
        let s = (2.0 * r).sinh() / 2.0;
        let v = Matrix4::new(
            c, 0.0, s, 0.0, //
            0.0, c, 0.0, -s, //
            s, 0.0, c, 0.0, //
            0.0, -s, 0.0, c,
        );
        let e = log_negativity(&v)?;
        println!("r = {r:.2}  nu_minus = {:.6}  E_N = {:.6}  2r = {:.6}", e.nu_minus, e.log_negativity, 2.0 * r);
    }
    Ok(())
}
