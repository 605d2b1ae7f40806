//! Checks that an operating point stays inside the regime where the
//! linearized, Kerr-free model applies.

use serde::{Deserialize, Serialize};

use crate::dynamics::{check_stability, DriftMatrix};
use crate::steady::ModeAmplitudes;
use crate::system::{PhysicalConstants, SystemParams};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ValidityThresholds {
    /// Largest accepted ⟨m†m⟩ / 2Ns.
    pub excitation: f64,
    /// Largest accepted 𝒦|⟨m₁⟩|³ / Ω.
    pub kerr: f64,
    /// Smallest accepted mechanical Q.
    pub min_q: f64,
}

impl Default for ValidityThresholds {
    fn default() -> Self {
        Self {
            excitation: 0.01,
            kerr: 0.1,
            min_q: 100.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidityReport {
    pub magnon_number_1: f64,
    pub magnon_number_2: f64,
    /// 2Ns, the low-excitation capacity of each sphere.
    pub spin_capacity: f64,
    pub excitation_ratio_1: f64,
    pub excitation_ratio_2: f64,
    /// 𝒦|⟨m₁⟩|³, rad/s.
    pub kerr_shift: f64,
    /// |Ω| used in the Kerr comparison, rad/s.
    pub rabi: f64,
    pub kerr_ratio: f64,
    pub markov_q: f64,
    pub stable: bool,
    pub max_re_eig: f64,
    pub thresholds: ValidityThresholds,
    pub violations: Vec<String>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn ratio(num: f64, den: f64) -> f64 {
    if num == 0.0 {
        0.0
    } else {
        num / den
    }
}

pub fn audit_validity(
    params: &SystemParams,
    amplitudes: &ModeAmplitudes,
    drift: &DriftMatrix,
    constants: &PhysicalConstants,
    thresholds: ValidityThresholds,
) -> ValidityReport {
    let (n1, n2) = amplitudes.magnon_numbers();
    let capacity = 2.0 * params.sphere.n_spins * constants.s_spin;
    let kerr_shift = params.sphere.kerr_coeff * amplitudes.m1_avg.norm().powi(3);
    let rabi = amplitudes.rabi.abs();
    let (stable, max_re_eig) = match check_stability(drift) {
        Ok(s) => (s.stable, s.max_re_eig),
        Err(_) => (false, f64::NAN),
    };
    let mut report = ValidityReport {
        magnon_number_1: n1,
        magnon_number_2: n2,
        spin_capacity: capacity,
        excitation_ratio_1: ratio(n1, capacity),
        excitation_ratio_2: ratio(n2, capacity),
        kerr_shift,
        rabi,
        kerr_ratio: ratio(kerr_shift, rabi),
        markov_q: params.mechanical_q(),
        stable,
        max_re_eig,
        thresholds,
        violations: Vec::new(),
    };

    let mut v = Vec::new();
    for (name, r) in [
        ("excitation_ratio_1", report.excitation_ratio_1),
        ("excitation_ratio_2", report.excitation_ratio_2),
    ] {
        if !(r < thresholds.excitation) {
            v.push(format!("{name} = {r:.3e} is not below {:e}", thresholds.excitation));
        }
    }
    if !(report.kerr_ratio < thresholds.kerr) {
        v.push(format!(
            "kerr_ratio = {:.3e} is not below {:e}",
            report.kerr_ratio, thresholds.kerr
        ));
    }
    if !(report.markov_q >= thresholds.min_q) {
        v.push(format!("markov_q = {:.3e} is below {:e}", report.markov_q, thresholds.min_q));
    }
    if !stable {
        v.push(format!("drift matrix is not stable (max Re λ = {max_re_eig:.3e})"));
    }
    report.violations = v;
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::build_drift;
    use crate::steady::solve_effective;
    use crate::system::Drive;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn audit(p: &SystemParams) -> ValidityReport {
        let amps = solve_effective(p).unwrap();
        let drift = build_drift(p, &amps);
        audit_validity(p, &amps, &drift, &PhysicalConstants::default(), ValidityThresholds::default())
    }

    #[test]
    fn baseline_is_well_inside_the_regime() {
        let r = audit(&SystemParams::fig2_baseline());
        assert!(r.is_valid(), "{:?}", r.violations);
        assert_relative_eq!(r.magnon_number_1, 1.3e14, max_relative = 0.1);
        assert_relative_eq!(r.spin_capacity, 1.7e17, max_relative = 0.03);
        assert!(r.magnon_number_1 < 1e-2 * r.spin_capacity);
        assert!(r.magnon_number_2 < r.magnon_number_1);
        assert_relative_eq!(r.kerr_shift, 5.8e13, max_relative = 0.15);
        assert!(r.kerr_shift < r.rabi);
    }

    #[test]
    fn undriven_has_zero_ratios() {
        let mut p = SystemParams::fig2_baseline();
        p.drive = Drive::Effective { delta_1_tilde: 0.85 * p.omega_b, g_eff: 0.0 };
        let r = audit(&p);
        assert_eq!(r.excitation_ratio_1, 0.0);
        assert_eq!(r.kerr_ratio, 0.0);
    }

    #[test]
    fn strong_coupling_violates_kerr_bound() {
        let mut p = SystemParams::fig2_baseline();
        p.drive = Drive::Effective { delta_1_tilde: 0.85 * p.omega_b, g_eff: 2.0 * PI * 9.6e6 };
        let r = audit(&p);
        // kerr ratio scales as G², four times the baseline ≈ 0.08
        assert!(r.kerr_ratio > 0.1);
        assert!(!r.is_valid());
    }

    #[test]
    fn thresholds_are_configurable() {
        let p = SystemParams::fig2_baseline();
        let amps = solve_effective(&p).unwrap();
        let drift = build_drift(&p, &amps);
        let strict = ValidityThresholds { kerr: 0.01, ..Default::default() };
        let r = audit_validity(&p, &amps, &drift, &PhysicalConstants::default(), strict);
        assert!(r.violations.iter().any(|v| v.starts_with("kerr_ratio")));
    }
}
