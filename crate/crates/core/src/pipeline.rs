//! End-to-end evaluation of a single operating point.

use crate::dynamics::{build_diffusion, build_drift, check_stability, StabilityResult};
use crate::entanglement::{all_bipartite, entanglement, EntanglementResult};
use crate::error::{Error, Result};
use crate::lyapunov::{solve_steady, solve_unchecked, CovarianceMatrix};
use crate::mode::ModePair;
use crate::steady::{self, ModeAmplitudes};
use crate::system::{Drive, PhysicalConstants, SystemParams};
use crate::validity::{audit_validity, ValidityReport, ValidityThresholds};

#[derive(Debug, Clone)]
pub struct PointReport {
    pub params: SystemParams,
    pub amplitudes: ModeAmplitudes,
    pub stability: StabilityResult,
    /// Present only when the drift matrix is stable.
    pub covariance: Option<CovarianceMatrix>,
    /// All six pairs; empty when unstable.
    pub entanglement: Vec<EntanglementResult>,
    pub validity: ValidityReport,
    pub warnings: Vec<String>,
}

impl PointReport {
    pub fn pair(&self, pair: ModePair) -> Option<&EntanglementResult> {
        self.entanglement
            .iter()
            .find(|e| e.pair == pair || e.pair == pair.swapped())
    }
}

/// Mean fields for `params`, falling back to bare couplings when the
/// effective closed forms are singular.
pub(crate) fn amplitudes_or_undetermined(
    params: &SystemParams,
    constants: &PhysicalConstants,
) -> Result<ModeAmplitudes> {
    match (steady::solve(params, constants), params.drive) {
        (Ok(a), _) => Ok(a),
        (Err(Error::Singular(_)), Drive::Effective { delta_1_tilde, g_eff }) => {
            Ok(ModeAmplitudes::undetermined(delta_1_tilde, g_eff))
        }
        (Err(e), _) => Err(e),
    }
}

pub fn evaluate_point(
    params: &SystemParams,
    constants: &PhysicalConstants,
    thresholds: ValidityThresholds,
) -> Result<PointReport> {
    params.validate()?;
    let warnings = params.warnings();
    let amplitudes = steady::solve(params, constants)?;
    let drift = build_drift(params, &amplitudes);
    let diffusion = build_diffusion(params, constants)?;
    let stability = check_stability(&drift)?;
    let validity = audit_validity(params, &amplitudes, &drift, constants, thresholds);
    let (covariance, entanglement) = if stability.stable {
        let cm = solve_unchecked(&drift, &diffusion)?;
        (Some(cm), all_bipartite(&cm)?)
    } else {
        (None, Vec::new())
    };
    Ok(PointReport {
        params: params.clone(),
        amplitudes,
        stability,
        covariance,
        entanglement,
        validity,
        warnings,
    })
}

/// Steady-state covariance matrix of `params`; errors if unstable.
pub fn steady_covariance(params: &SystemParams, constants: &PhysicalConstants) -> Result<CovarianceMatrix> {
    let amps = amplitudes_or_undetermined(params, constants)?;
    let drift = build_drift(params, &amps);
    let diffusion = build_diffusion(params, constants)?;
    solve_steady(&drift, &diffusion)
}

/// E_N of one pair at `params`; errors if unstable.
pub fn pair_log_negativity(
    params: &SystemParams,
    constants: &PhysicalConstants,
    pair: ModePair,
) -> Result<EntanglementResult> {
    entanglement(&steady_covariance(params, constants)?, pair)
}
