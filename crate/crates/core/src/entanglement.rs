//! Gaussian entanglement measures on covariance matrices.
//!
//! The symplectic form is Ω = ⊕ [[0, 1], [−1, 0]] over (x, y) pairs and the
//! vacuum variance is 1/2, so a state is physical iff every symplectic
//! eigenvalue is at least 1/2.

use nalgebra::{DMatrix, Matrix4, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lyapunov::CovarianceMatrix;
use crate::mode::ModePair;

/// Relative tolerance for pairing the ±iν eigenvalues.
pub const PAIRING_TOL: f64 = 1e-8;
/// Symplectic eigenvalues below this are treated as zero.
pub const NU_FLOOR: f64 = 1e-12;
/// Upper cap on the logarithmic negativity for degenerate inputs.
pub const LOG_NEGATIVITY_CAP: f64 = 50.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntanglementResult {
    pub pair: ModePair,
    pub nu_minus: f64,
    pub log_negativity: f64,
    pub entangled: bool,
}

/// Minimum symplectic eigenvalue of the partial transpose and the resulting E_N.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeNegativity {
    pub nu_minus: f64,
    pub log_negativity: f64,
}

impl TwoModeNegativity {
    pub fn entangled(&self) -> bool {
        self.nu_minus < 0.5
    }
}

/// 4×4 principal submatrix over the quadratures of `pair`, in pair order.
pub fn reduce(cm: &CovarianceMatrix, pair: ModePair) -> Matrix4<f64> {
    let idx = [
        pair.first().offset(),
        pair.first().offset() + 1,
        pair.second().offset(),
        pair.second().offset() + 1,
    ];
    Matrix4::from_fn(|i, j| cm.get(idx[i], idx[j]))
}

/// `P V P` with `P = diag(1, −1, 1, 1)`: flips the momentum of the first mode.
pub fn partial_transpose(cm4: &Matrix4<f64>) -> Matrix4<f64> {
    let mut out = *cm4;
    for k in 0..4 {
        if k != 1 {
            out[(1, k)] = -out[(1, k)];
            out[(k, 1)] = -out[(k, 1)];
        }
    }
    out
}

fn symplectic_form(n: usize) -> DMatrix<f64> {
    let mut om = DMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        om[(2 * k, 2 * k + 1)] = 1.0;
        om[(2 * k + 1, 2 * k)] = -1.0;
    }
    om
}

/// Symplectic eigenvalues of a 2n×2n covariance matrix, ascending.
///
/// Computed from `M = V^{1/2} Ω V^{1/2}`, which is similar to ΩV and real
/// antisymmetric; its singular values are the ν in degenerate pairs.
pub fn symplectic_spectrum(cm: &DMatrix<f64>) -> Result<Vec<f64>> {
    let dim = cm.nrows();
    if dim == 0 || dim != cm.ncols() || !dim.is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "covariance matrix must be square with even dimension, got {}×{}",
            cm.nrows(),
            cm.ncols()
        )));
    }
    let scale = cm.amax();
    if (cm - cm.transpose()).amax() > 1e-10 * scale {
        return Err(Error::Numerical("covariance matrix is not symmetric".into()));
    }
    let sym = (cm + cm.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    let floor = -1e-12 * scale;
    if eig.eigenvalues.iter().any(|&l| l < floor) {
        return Err(Error::Numerical("covariance matrix is not positive semidefinite".into()));
    }
    let sqrt_diag = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| l.max(0.0).sqrt()));
    let root = &eig.eigenvectors * sqrt_diag * eig.eigenvectors.transpose();
    let m = &root * symplectic_form(dim / 2) * &root;
    let mut singular: Vec<f64> = m.singular_values().iter().copied().collect();
    singular.sort_by(f64::total_cmp);

    let mut out = Vec::with_capacity(dim / 2);
    for pair in singular.chunks(2) {
        let (lo, hi) = (pair[0], pair[1]);
        if (hi - lo) > PAIRING_TOL * hi.max(scale * 1e-8) {
            return Err(Error::Numerical(format!(
                "symplectic eigenvalues do not pair: {lo:.12e} vs {hi:.12e}"
            )));
        }
        let nu = 0.5 * (lo + hi);
        out.push(if nu < NU_FLOOR { 0.0 } else { nu });
    }
    Ok(out)
}

fn to_dynamic(m: &Matrix4<f64>) -> DMatrix<f64> {
    DMatrix::from_column_slice(4, 4, m.as_slice())
}

/// E_N = max(0, −ln 2ν̃₋), with ν̃₋ the smallest symplectic eigenvalue of
/// the partially transposed two-mode covariance matrix.
pub fn log_negativity(cm4: &Matrix4<f64>) -> Result<TwoModeNegativity> {
    let spectrum = symplectic_spectrum(&to_dynamic(&partial_transpose(cm4)))?;
    let nu_minus = spectrum[0];
    let log_negativity = if nu_minus == 0.0 {
        LOG_NEGATIVITY_CAP
    } else {
        (-(2.0 * nu_minus).ln()).clamp(0.0, LOG_NEGATIVITY_CAP)
    };
    Ok(TwoModeNegativity {
        nu_minus,
        log_negativity,
    })
}

pub fn entanglement(cm: &CovarianceMatrix, pair: ModePair) -> Result<EntanglementResult> {
    let n = log_negativity(&reduce(cm, pair))?;
    Ok(EntanglementResult {
        pair,
        nu_minus: n.nu_minus,
        log_negativity: n.log_negativity,
        entangled: n.entangled(),
    })
}

/// E_N for each of the six unordered mode pairs.
pub fn all_bipartite(cm: &CovarianceMatrix) -> Result<Vec<EntanglementResult>> {
    ModePair::all().into_iter().map(|p| entanglement(cm, p)).collect()
}

/// Symplectic spectrum of the full 8×8 matrix.
pub fn full_spectrum(cm: &CovarianceMatrix) -> Result<Vec<f64>> {
    symplectic_spectrum(&DMatrix::from_column_slice(8, 8, cm.matrix().as_slice()))
}
