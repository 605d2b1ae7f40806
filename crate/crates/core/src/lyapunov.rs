//! Steady-state covariance matrix from `A V + V Aᵀ = −D`.

use nalgebra::DMatrix;

use crate::dynamics::{check_stability, DiffusionMatrix, DriftMatrix, Matrix8};
use crate::error::{Error, Result};
use crate::mode::Mode;

/// Residual bound accepted by [`solve_steady`], relative to ‖D‖_F.
pub const RESIDUAL_TOL: f64 = 1e-8;

/// Largest `step · ‖A‖_∞` for which the RK4 oracle is accepted.
const RK4_MAX_STEP_NORM: f64 = 2.5;

/// Symmetric 8×8 covariance matrix of the quadrature fluctuations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceMatrix {
    entries: Matrix8,
}

impl CovarianceMatrix {
    /// Symmetrizes on construction.
    pub fn new(m: Matrix8) -> Self {
        Self {
            entries: (m + m.transpose()) * 0.5,
        }
    }

    pub fn vacuum() -> Self {
        Self::new(Matrix8::identity() * 0.5)
    }

    pub fn matrix(&self) -> &Matrix8 {
        &self.entries
    }

    pub fn mode_labels(&self) -> [Mode; 4] {
        Mode::ALL
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[(i, j)]
    }
}

/// ‖A V + V Aᵀ + D‖_F.
pub fn lyapunov_residual(drift: &DriftMatrix, diffusion: &DiffusionMatrix, v: &Matrix8) -> f64 {
    let a = drift.matrix();
    (a * v + v * a.transpose() + diffusion.matrix()).norm()
}

/// Kronecker-sum operator `I ⊗ A + A ⊗ I` acting on column-major vec(V).
fn kronecker_sum(a: &Matrix8) -> DMatrix<f64> {
    let n = 8;
    let mut k = DMatrix::<f64>::zeros(n * n, n * n);
    for col in 0..n {
        for row in 0..n {
            let r = col * n + row;
            for m in 0..n {
                // (A V)[row, col] = Σ_m A[row, m] V[m, col]
                k[(r, col * n + m)] += a[(row, m)];
                // (V Aᵀ)[row, col] = Σ_m V[row, m] A[col, m]
                k[(r, m * n + row)] += a[(col, m)];
            }
        }
    }
    k
}

/// Direct solve of the vectorized Lyapunov equation.
///
/// The system is rescaled by max|A_ij| before factorization and refined
/// once; the returned matrix is symmetrized.
pub fn solve_steady(drift: &DriftMatrix, diffusion: &DiffusionMatrix) -> Result<CovarianceMatrix> {
    let stability = check_stability(drift)?;
    if !stability.stable {
        return Err(Error::Unstable {
            max_re_eig: stability.max_re_eig,
        });
    }
    solve_unchecked(drift, diffusion)
}

pub(crate) fn solve_unchecked(drift: &DriftMatrix, diffusion: &DiffusionMatrix) -> Result<CovarianceMatrix> {
    let scale = drift.matrix().amax();
    if scale == 0.0 {
        return Err(Error::Numerical("drift matrix is identically zero".into()));
    }
    let a = drift.matrix() / scale;
    let d = diffusion.matrix() / scale;
    let k = kronecker_sum(&a);
    let rhs = DMatrix::from_column_slice(64, 1, (-d).as_slice());

    let lu = k.clone().lu();
    let mut x = lu
        .solve(&rhs)
        .ok_or_else(|| Error::Numerical("vectorized Lyapunov system is singular".into()))?;
    let correction = lu
        .solve(&(&rhs - &k * &x))
        .ok_or_else(|| Error::Numerical("vectorized Lyapunov system is singular".into()))?;
    x += correction;

    let v = CovarianceMatrix::new(Matrix8::from_column_slice(x.as_slice()));
    let residual = lyapunov_residual(drift, diffusion, v.matrix());
    let d_norm = diffusion.diagonal().norm();
    if !(residual <= RESIDUAL_TOL * d_norm) && d_norm > 0.0 {
        return Err(Error::Numerical(format!(
            "Lyapunov residual {residual:.3e} exceeds {RESIDUAL_TOL:e}·‖D‖_F = {:.3e}",
            RESIDUAL_TOL * d_norm
        )));
    }
    Ok(v)
}

/// RK4 step bound recommended for the oracle, `0.01 / ‖A‖_∞`.
pub fn default_step(drift: &DriftMatrix) -> f64 {
    0.01 / inf_norm(drift.matrix())
}

fn inf_norm(a: &Matrix8) -> f64 {
    a.row_iter()
        .map(|r| r.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Integrates `V̇ = A V + V Aᵀ + D` from the vacuum `V(0) = I/2` with
/// fixed-step RK4. Independent cross-check of [`solve_steady`].
pub fn integrate_to_steady(
    drift: &DriftMatrix,
    diffusion: &DiffusionMatrix,
    horizon: f64,
    step: f64,
) -> Result<CovarianceMatrix> {
    if !(horizon > 0.0) || !(step > 0.0) {
        return Err(Error::Domain("horizon and step must be positive".into()));
    }
    let stability = check_stability(drift)?;
    if !stability.stable {
        return Err(Error::Unstable {
            max_re_eig: stability.max_re_eig,
        });
    }
    let a = *drift.matrix();
    let norm = inf_norm(&a);
    if step * norm > RK4_MAX_STEP_NORM {
        return Err(Error::Numerical(format!(
            "RK4 step {step:.3e} s is unstable for ‖A‖ = {norm:.3e}; use step ≤ {:.3e} s",
            0.01 / norm
        )));
    }
    let at = a.transpose();
    let d = diffusion.matrix();
    let rhs = |v: &Matrix8| a * v + v * at + d;

    let n = (horizon / step).ceil() as usize;
    let h = horizon / n as f64;
    let mut v = Matrix8::identity() * 0.5;
    for _ in 0..n {
        let k1 = rhs(&v);
        let k2 = rhs(&(v + k1 * (0.5 * h)));
        let k3 = rhs(&(v + k2 * (0.5 * h)));
        let k4 = rhs(&(v + k3 * h));
        v += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
    }
    if !v.iter().all(|x| x.is_finite()) {
        return Err(Error::Numerical("RK4 integration diverged; reduce the step".into()));
    }
    Ok(CovarianceMatrix::new(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::Vector8;
    use approx::assert_relative_eq;

    fn single_mode(kappa: f64, nbar: f64) -> (DriftMatrix, DiffusionMatrix) {
        // one damped mode on the first pair, the rest strongly damped vacuum
        let mut a = -Matrix8::identity() * kappa;
        a[(6, 7)] = 0.0;
        let mut d = Vector8::repeat(kappa);
        d[0] = kappa * (2.0 * nbar + 1.0);
        d[1] = kappa * (2.0 * nbar + 1.0);
        (DriftMatrix(a), DiffusionMatrix(d))
    }

    #[test]
    fn thermal_mode_equilibrium() {
        let (a, d) = single_mode(3.0, 4.0);
        let v = solve_steady(&a, &d).unwrap();
        assert_relative_eq!(v.get(0, 0), 4.5, max_relative = 1e-12);
        assert_relative_eq!(v.get(1, 1), 4.5, max_relative = 1e-12);
        assert!(v.get(0, 1).abs() < 1e-14);
        assert_relative_eq!(v.get(2, 2), 0.5, max_relative = 1e-12);
    }

    #[test]
    fn oracle_converges_for_thermal_mode() {
        let kappa = 3.0;
        let (a, d) = single_mode(kappa, 4.0);
        let v = integrate_to_steady(&a, &d, 20.0 / kappa, default_step(&a)).unwrap();
        assert!((v.get(0, 0) - 4.5).abs() < 1e-6);
        assert!((v.get(1, 1) - 4.5).abs() < 1e-6);
    }

    #[test]
    fn oracle_without_noise_decays_to_zero() {
        let (a, _) = single_mode(2.0, 0.0);
        let d = DiffusionMatrix(Vector8::zeros());
        let v = integrate_to_steady(&a, &d, 20.0, default_step(&a)).unwrap();
        assert!(v.matrix().amax() < 1e-10);
    }

    #[test]
    fn oracle_rejects_large_step() {
        let (a, d) = single_mode(2.0, 0.0);
        let err = integrate_to_steady(&a, &d, 10.0, 5.0).unwrap_err();
        assert!(matches!(err, Error::Numerical(_)));
    }

    #[test]
    fn unstable_drift_rejected() {
        let a = DriftMatrix(Matrix8::identity());
        let d = DiffusionMatrix(Vector8::repeat(1.0));
        assert!(matches!(solve_steady(&a, &d), Err(Error::Unstable { .. })));
        assert!(matches!(integrate_to_steady(&a, &d, 1.0, 1e-3), Err(Error::Unstable { .. })));
    }

    #[test]
    fn kronecker_sum_matches_direct_product() {
        let mut a = Matrix8::zeros();
        for (k, v) in a.iter_mut().enumerate() {
            *v = ((k * 37 % 11) as f64 - 5.0) * 0.3;
        }
        let mut v = Matrix8::zeros();
        for (k, x) in v.iter_mut().enumerate() {
            *x = ((k * 13 % 7) as f64) * 0.1;
        }
        let direct = a * v + v * a.transpose();
        let vec = DMatrix::from_column_slice(64, 1, v.as_slice());
        let via = kronecker_sum(&a) * vec;
        for (x, y) in direct.as_slice().iter().zip(via.as_slice()) {
            assert!((x - y).abs() < 1e-12);
        }
    }
}
