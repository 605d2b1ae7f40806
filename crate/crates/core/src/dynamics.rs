//! Linearized fluctuation dynamics `u̇ = A u + n`.
//!
//! Quadratures are ordered (δX, δY, δx₁, δy₁, δx₂, δy₂, δq, δp) with
//! X = (a + a†)/√2 and Y = i(a† − a)/√2, so the vacuum variance is 1/2.

use nalgebra::{Complex, Schur, SMatrix, SVector};

use crate::error::{Error, Result};
use crate::steady::ModeAmplitudes;
use crate::system::{PhysicalConstants, SystemParams};

pub type Matrix8 = SMatrix<f64, 8, 8>;
pub type Vector8 = SVector<f64, 8>;

/// Stability requires every eigenvalue to satisfy Re λ < −STABILITY_MARGIN · ω_b.
pub const STABILITY_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriftMatrix(pub Matrix8);

impl DriftMatrix {
    pub fn matrix(&self) -> &Matrix8 {
        &self.0
    }

    /// Mechanical frequency as stored in the δq row.
    pub fn omega_b(&self) -> f64 {
        self.0[(6, 7)]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffusionMatrix(pub Vector8);

impl DiffusionMatrix {
    pub fn diagonal(&self) -> &Vector8 {
        &self.0
    }

    pub fn matrix(&self) -> Matrix8 {
        Matrix8::from_diagonal(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityResult {
    pub stable: bool,
    pub max_re_eig: f64,
    pub eigenvalues: Vec<Complex<f64>>,
}

pub fn build_drift(params: &SystemParams, amps: &ModeAmplitudes) -> DriftMatrix {
    let (ka, k1, k2) = (params.kappa_a, params.kappa_1, params.kappa_2);
    let (da, d1, d2) = (params.delta_a, amps.delta_1_tilde, params.delta_2);
    let (g1, g2, g) = (params.g_1, params.g_2, amps.g_eff);
    let (wb, gb) = (params.omega_b, params.gamma_b);
    #[rustfmt::skip]
    let a = Matrix8::from_row_slice(&[
        -ka,  da,  0.0,  g1,  0.0,  g2,  0.0,  0.0,
        -da, -ka,  -g1, 0.0,  -g2, 0.0,  0.0,  0.0,
        0.0,  g1,  -k1,  d1,  0.0, 0.0,   -g,  0.0,
        -g1, 0.0,  -d1, -k1,  0.0, 0.0,  0.0,  0.0,
        0.0,  g2,  0.0, 0.0,  -k2,  d2,  0.0,  0.0,
        -g2, 0.0,  0.0, 0.0,  -d2, -k2,  0.0,  0.0,
        0.0, 0.0,  0.0, 0.0,  0.0, 0.0,  0.0,   wb,
        0.0, 0.0,  0.0,   g,  0.0, 0.0,  -wb,  -gb,
    ]);
    DriftMatrix(a)
}

/// Diagonal diffusion matrix with thermal occupancies at the lab-frame
/// frequencies ω_a, ω₁, ω₂ and ω_b.
pub fn build_diffusion(params: &SystemParams, constants: &PhysicalConstants) -> Result<DiffusionMatrix> {
    let t = params.temperature;
    let n_a = crate::system::thermal_occupancy(params.omega_a, t, constants)?;
    let n_1 = crate::system::thermal_occupancy(params.omega_1(), t, constants)?;
    let n_2 = crate::system::thermal_occupancy(params.omega_2(), t, constants)?;
    let n_b = crate::system::thermal_occupancy(params.omega_b, t, constants)?;
    let ca = params.kappa_a * (2.0 * n_a + 1.0);
    let c1 = params.kappa_1 * (2.0 * n_1 + 1.0);
    let c2 = params.kappa_2 * (2.0 * n_2 + 1.0);
    let cb = params.gamma_b * (2.0 * n_b + 1.0);
    Ok(DiffusionMatrix(Vector8::from_column_slice(&[
        ca, ca, c1, c1, c2, c2, 0.0, cb,
    ])))
}

pub fn check_stability(drift: &DriftMatrix) -> Result<StabilityResult> {
    let m = drift.0;
    let scale = m.amax().max(f64::MIN_POSITIVE);
    let schur = Schur::try_new(m, 1e-15 * scale, 10_000)
        .ok_or_else(|| Error::Numerical("Schur decomposition of the drift matrix did not converge".into()))?;
    let eigs = schur.complex_eigenvalues();
    let mut eigenvalues: Vec<Complex<f64>> = eigs.iter().copied().collect();
    eigenvalues.sort_by(|a, b| b.re.total_cmp(&a.re).then(a.im.total_cmp(&b.im)));
    let max_re_eig = eigenvalues
        .iter()
        .map(|z| z.re)
        .fold(f64::NEG_INFINITY, f64::max);
    let threshold = -STABILITY_MARGIN * drift.omega_b().abs();
    Ok(StabilityResult {
        stable: max_re_eig < threshold,
        max_re_eig,
        eigenvalues,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::steady::solve_effective;
    use crate::system::Drive;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn baseline() -> (SystemParams, ModeAmplitudes) {
        let p = SystemParams::fig2_baseline();
        let amps = solve_effective(&p).unwrap();
        (p, amps)
    }

    #[test]
    fn drift_entries_match_layout() {
        let (p, amps) = baseline();
        let a = build_drift(&p, &amps).0;
        let g = 2.0 * PI * 4.8e6;
        assert_relative_eq!(a[(2, 6)], -g, max_relative = 1e-15);
        assert_relative_eq!(a[(7, 3)], g, max_relative = 1e-15);
        assert_eq!(a[(6, 6)], 0.0);
        assert_eq!(a[(6, 7)], p.omega_b);
        assert_eq!(a[(7, 6)], -p.omega_b);
        assert_eq!(a[(7, 7)], -p.gamma_b);
        assert_eq!(a[(0, 0)], -p.kappa_a);
        assert_eq!(a[(1, 1)], -p.kappa_a);
        // every g-dependent entry, sign for sign
        let (g1, g2) = (p.g_1, p.g_2);
        let expect = [
            ((0, 3), g1), ((0, 5), g2), ((1, 2), -g1), ((1, 4), -g2),
            ((2, 1), g1), ((3, 0), -g1), ((4, 1), g2), ((5, 0), -g2),
            ((2, 6), -g), ((7, 3), g),
        ];
        for ((i, j), v) in expect {
            assert_relative_eq!(a[(i, j)], v, max_relative = 1e-15);
        }
        // second magnon never sees G
        let mut uncoupled = amps.clone();
        uncoupled.g_eff = 0.0;
        let a0 = build_drift(&p, &uncoupled).0;
        for &i in &[0usize, 1, 4, 5] {
            for &j in &[0usize, 1, 4, 5] {
                assert_eq!(a[(i, j)], a0[(i, j)]);
            }
        }
        let nnz = a.iter().filter(|v| **v != 0.0).count();
        assert_eq!(nnz, 7 + 6 + 8 + 2 + 2);
    }

    #[test]
    fn decoupled_drift_is_block_diagonal() {
        let mut p = SystemParams::fig2_baseline();
        p.g_1 = 0.0;
        p.g_2 = 0.0;
        p.drive = Drive::Effective { delta_1_tilde: 0.85 * p.omega_b, g_eff: 0.0 };
        let amps = solve_effective(&p).unwrap();
        let a = build_drift(&p, &amps).0;
        for i in 0..8 {
            for j in 0..8 {
                if i / 2 != j / 2 {
                    assert_eq!(a[(i, j)], 0.0, "({i},{j})");
                }
            }
        }
    }

    #[test]
    fn diffusion_at_zero_temperature_is_vacuum() {
        let mut p = SystemParams::fig2_baseline();
        p.temperature = 0.0;
        let d = build_diffusion(&p, &PhysicalConstants::default()).unwrap();
        let expect = [p.kappa_a, p.kappa_a, p.kappa_1, p.kappa_1, p.kappa_2, p.kappa_2, 0.0, p.gamma_b];
        for (x, e) in d.0.iter().zip(expect) {
            assert_eq!(*x, e);
        }
    }

    #[test]
    fn diffusion_mechanical_entry_at_10_mk() {
        let p = SystemParams::fig2_baseline();
        let d = build_diffusion(&p, &PhysicalConstants::default()).unwrap();
        // occupancy 20.3 at 10 MHz and 10 mK (see occupancy oracle in tests/)
        assert_relative_eq!(d.0[7], p.gamma_b * (2.0 * 20.3 + 1.0), max_relative = 2e-3);
        assert_eq!(d.0[6], 0.0);
        assert!(d.0.iter().all(|v| *v >= 0.0));
        let hot = SystemParams { temperature: 1.0, ..p };
        let d = build_diffusion(&hot, &PhysicalConstants::default()).unwrap();
        assert_eq!(d.0[6], 0.0);
    }

    #[test]
    fn diagonal_drift_is_stable() {
        let a = DriftMatrix(-Matrix8::identity());
        let s = check_stability(&a).unwrap();
        assert!(s.stable);
        assert_relative_eq!(s.max_re_eig, -1.0, max_relative = 1e-12);
        assert_eq!(s.eigenvalues.len(), 8);
    }

    #[test]
    fn baseline_is_stable() {
        let (p, amps) = baseline();
        let s = check_stability(&build_drift(&p, &amps)).unwrap();
        assert!(s.stable);
        assert!(s.max_re_eig < 0.0);
    }

    #[test]
    fn tenfold_coupling_is_unstable() {
        // regression: max Re λ ≈ +1.146e8 rad/s (cross-checked with a LAPACK eigensolver)
        let (p, mut amps) = baseline();
        amps.g_eff *= 10.0;
        let s = check_stability(&build_drift(&p, &amps)).unwrap();
        assert!(!s.stable);
        assert_relative_eq!(s.max_re_eig, 1.146_348_864e8, max_relative = 1e-6);
    }

    #[test]
    fn spectrum_factorizes_without_magnomechanics() {
        let (p, mut amps) = baseline();
        amps.g_eff = 0.0;
        let full = check_stability(&build_drift(&p, &amps)).unwrap().eigenvalues;
        let a = build_drift(&p, &amps).0;
        let optical = a.fixed_view::<6, 6>(0, 0).into_owned().complex_eigenvalues();
        let mech = a.fixed_view::<2, 2>(6, 6).into_owned().complex_eigenvalues();
        let mut parts: Vec<Complex<f64>> = optical.iter().chain(mech.iter()).copied().collect();
        let key = |z: &Complex<f64>| (z.re, z.im);
        parts.sort_by(|x, y| key(x).partial_cmp(&key(y)).unwrap());
        let mut full_sorted = full.clone();
        full_sorted.sort_by(|x, y| key(x).partial_cmp(&key(y)).unwrap());
        for (x, y) in full_sorted.iter().zip(&parts) {
            assert!((x - y).norm() <= 1e-9 * y.norm().max(1.0), "{x} vs {y}");
        }
    }
}
