//! Physical constants, sphere geometry and the parameter set of the
//! four-mode system (cavity, two magnon modes, one phonon mode).
//!
//! Every frequency, detuning, rate and coupling in this module is an angular
//! frequency in rad/s. Conversion from the `ω/2π` values found in config
//! files happens once, in [`crate::config`].

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Kerr coefficient of a 1 mm diameter YIG sphere, `𝒦/2π = 0.1 nHz`.
pub const KERR_REFERENCE: f64 = 2.0 * PI * 0.1e-9;
/// Diameter at which [`KERR_REFERENCE`] applies.
pub const KERR_REFERENCE_DIAMETER: f64 = 1.0e-3;
/// Sphere diameter used when none is configured.
pub const DEFAULT_DIAMETER: f64 = 250.0e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// Reduced Planck constant, J·s.
    pub hbar: f64,
    /// Boltzmann constant, J/K.
    pub k_b: f64,
    /// Gyromagnetic ratio, rad/(s·T).
    pub gamma_gyro: f64,
    /// Spin density of YIG, m⁻³.
    pub rho_spin: f64,
    /// Spin number of the Fe³⁺ ground state.
    pub s_spin: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self {
            hbar: 1.054_571_817e-34,
            k_b: 1.380_649e-23,
            gamma_gyro: 2.0 * PI * 28.0e9,
            rho_spin: 4.22e27,
            s_spin: 2.5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SphereProps {
    /// m
    pub diameter: f64,
    /// m³
    pub volume: f64,
    /// Total number of spins `N = ρV`.
    pub n_spins: f64,
    /// Kerr coefficient, rad/s.
    pub kerr_coeff: f64,
}

fn sphere_volume(diameter: f64) -> f64 {
    PI / 6.0 * diameter.powi(3)
}

/// Geometry, spin count and Kerr coefficient of a YIG sphere.
///
/// The Kerr coefficient is scaled inversely with the volume from the 1 mm
/// reference value.
pub fn derive_sphere(diameter: f64, constants: &PhysicalConstants) -> Result<SphereProps> {
    if !(diameter > 0.0) || !diameter.is_finite() {
        return Err(Error::Domain(format!(
            "sphere diameter must be positive and finite, got {diameter}"
        )));
    }
    let volume = sphere_volume(diameter);
    let ratio = sphere_volume(KERR_REFERENCE_DIAMETER) / volume;
    Ok(SphereProps {
        diameter,
        volume,
        n_spins: constants.rho_spin * volume,
        kerr_coeff: KERR_REFERENCE * ratio,
    })
}

/// Rabi frequency `Ω = (√5/4) γ √N B₀` of a drive field of amplitude `b_field` (T).
pub fn rabi_frequency(b_field: f64, sphere: &SphereProps, constants: &PhysicalConstants) -> Result<f64> {
    if !(b_field >= 0.0) {
        return Err(Error::Domain(format!(
            "drive field amplitude must be non-negative, got {b_field}"
        )));
    }
    Ok(5f64.sqrt() / 4.0 * constants.gamma_gyro * sphere.n_spins.sqrt() * b_field)
}

/// Bose–Einstein occupancy of a mode at angular frequency `omega` (rad/s).
///
/// Exactly zero at `T = 0`; large `ħω/k_BT` underflows smoothly to zero.
pub fn thermal_occupancy(omega: f64, temperature: f64, constants: &PhysicalConstants) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::Domain(format!(
            "mode frequency must be positive, got {omega}"
        )));
    }
    if !(temperature >= 0.0) {
        return Err(Error::Domain(format!(
            "temperature must be non-negative, got {temperature}"
        )));
    }
    if temperature == 0.0 {
        return Ok(0.0);
    }
    let x = constants.hbar * omega / (constants.k_b * temperature);
    Ok(1.0 / x.exp_m1())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DriveMode {
    Effective,
    Physical,
}

/// How strongly the first magnon mode is driven.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DriveStrength {
    /// Rabi frequency Ω, rad/s.
    Rabi(f64),
    /// Drive field amplitude B₀, T.
    Field(f64),
}

/// Parameterization of the driven magnon mode.
///
/// `Effective` fixes the effective detuning Δ̃₁ and the enhanced
/// magnomechanical coupling G directly, as the figures do. `Physical`
/// fixes the bare detuning Δ₁ and the drive, and the mean fields are found
/// self-consistently.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Drive {
    Effective { delta_1_tilde: f64, g_eff: f64 },
    Physical { delta_1: f64, strength: DriveStrength },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    pub omega_a: f64,
    pub omega_b: f64,
    /// Cavity detuning Δ_a = ω_a − ω₀.
    pub delta_a: f64,
    /// Second magnon detuning Δ₂ = ω₂ − ω₀.
    pub delta_2: f64,
    pub kappa_a: f64,
    pub kappa_1: f64,
    pub kappa_2: f64,
    pub gamma_b: f64,
    pub g_1: f64,
    pub g_2: f64,
    /// Single-magnon magnomechanical coupling G₀.
    pub g_0: f64,
    /// K
    pub temperature: f64,
    pub sphere: SphereProps,
    pub drive: Drive,
}

impl SystemParams {
    /// The operating point used throughout the detuning and coupling maps:
    /// ω_a/2π = 10 GHz, ω_b/2π = 10 MHz, γ_b/2π = 100 Hz, κ_a = κ₁ = κ₂ = 2π·1 MHz,
    /// g₁/2π = 3.2 MHz, g₂/2π = 2.6 MHz, G/2π = 4.8 MHz, G₀/2π = 0.3 Hz,
    /// Δ̃₁ = 0.85ω_b, Δ_a = Δ₂ = −0.9ω_b, T = 10 mK, 250 μm spheres.
    pub fn fig2_baseline() -> Self {
        let two_pi = 2.0 * PI;
        let omega_b = two_pi * 10.0e6;
        let constants = PhysicalConstants::default();
        Self {
            omega_a: two_pi * 10.0e9,
            omega_b,
            delta_a: -0.9 * omega_b,
            delta_2: -0.9 * omega_b,
            kappa_a: two_pi * 1.0e6,
            kappa_1: two_pi * 1.0e6,
            kappa_2: two_pi * 1.0e6,
            gamma_b: two_pi * 100.0,
            g_1: two_pi * 3.2e6,
            g_2: two_pi * 2.6e6,
            g_0: two_pi * 0.3,
            temperature: 0.01,
            sphere: derive_sphere(DEFAULT_DIAMETER, &constants).expect("default diameter is valid"),
            drive: Drive::Effective {
                delta_1_tilde: 0.85 * omega_b,
                g_eff: two_pi * 4.8e6,
            },
        }
    }

    pub fn drive_mode(&self) -> DriveMode {
        match self.drive {
            Drive::Effective { .. } => DriveMode::Effective,
            Drive::Physical { .. } => DriveMode::Physical,
        }
    }

    /// Drive frequency ω₀ = ω_a − Δ_a.
    pub fn omega_0(&self) -> f64 {
        self.omega_a - self.delta_a
    }

    /// Lab-frame frequency of the driven magnon mode, used for its bath occupancy.
    ///
    /// In effective mode this is reconstructed as Δ̃₁ + ω₀; the static
    /// magnetostrictive shift is negligible at GHz.
    pub fn omega_1(&self) -> f64 {
        match self.drive {
            Drive::Effective { delta_1_tilde, .. } => delta_1_tilde + self.omega_0(),
            Drive::Physical { delta_1, .. } => delta_1 + self.omega_0(),
        }
    }

    pub fn omega_2(&self) -> f64 {
        self.delta_2 + self.omega_0()
    }

    /// Mechanical quality factor Q_b = ω_b/γ_b.
    pub fn mechanical_q(&self) -> f64 {
        self.omega_b / self.gamma_b
    }

    /// Rabi frequency of the physical drive, if this is a physical parameter set.
    pub fn rabi(&self, constants: &PhysicalConstants) -> Result<Option<f64>> {
        match self.drive {
            Drive::Effective { .. } => Ok(None),
            Drive::Physical { strength: DriveStrength::Rabi(omega), .. } => Ok(Some(omega)),
            Drive::Physical { strength: DriveStrength::Field(b), .. } => {
                rabi_frequency(b, &self.sphere, constants).map(Some)
            }
        }
    }

    /// Hard invariants: positive rates, non-negative temperature, finite values.
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("omega_a", self.omega_a),
            ("omega_b", self.omega_b),
            ("kappa_a", self.kappa_a),
            ("kappa_1", self.kappa_1),
            ("kappa_2", self.kappa_2),
            ("gamma_b", self.gamma_b),
        ];
        for (name, v) in positive {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Domain(format!("{name} must be positive, got {v}")));
            }
        }
        let finite = [
            ("delta_a", self.delta_a),
            ("delta_2", self.delta_2),
            ("g_1", self.g_1),
            ("g_2", self.g_2),
            ("g_0", self.g_0),
        ];
        for (name, v) in finite {
            if !v.is_finite() {
                return Err(Error::Domain(format!("{name} must be finite, got {v}")));
            }
        }
        if !(self.temperature >= 0.0) || !self.temperature.is_finite() {
            return Err(Error::Domain(format!(
                "temperature must be non-negative, got {}",
                self.temperature
            )));
        }
        match self.drive {
            Drive::Effective { delta_1_tilde, g_eff } => {
                if !delta_1_tilde.is_finite() || !(g_eff >= 0.0) || !g_eff.is_finite() {
                    return Err(Error::Domain(
                        "effective drive needs finite delta_1_tilde and g_eff >= 0".into(),
                    ));
                }
            }
            Drive::Physical { delta_1, strength } => {
                let s = match strength {
                    DriveStrength::Rabi(v) | DriveStrength::Field(v) => v,
                };
                if !delta_1.is_finite() || !(s >= 0.0) || !s.is_finite() {
                    return Err(Error::Domain(
                        "physical drive needs finite delta_1 and a non-negative drive".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Soft conditions under which the model is only approximate.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        let q = self.mechanical_q();
        if q < 100.0 {
            out.push(format!(
                "mechanical quality factor Q_b = {q:.3e} < 100; Markov approximation is questionable"
            ));
        }
        if let Drive::Effective { delta_1_tilde, .. } = self.drive {
            let kappa_max = self.kappa_a.max(self.kappa_1).max(self.kappa_2);
            let detuning_min = self.delta_a.abs().min(delta_1_tilde.abs()).min(self.delta_2.abs());
            if detuning_min < 5.0 * kappa_max {
                out.push(format!(
                    "smallest detuning {detuning_min:.3e} rad/s is not much larger than the largest \
                     linewidth {kappa_max:.3e} rad/s; closed-form mean fields are approximate"
                ));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn constants() -> PhysicalConstants {
        PhysicalConstants::default()
    }

    #[test]
    fn sphere_of_250_micron() {
        let s = derive_sphere(250e-6, &constants()).unwrap();
        assert_relative_eq!(s.n_spins, 3.5e16, max_relative = 0.02);
        assert_relative_eq!(s.kerr_coeff / (2.0 * PI), 6.4e-9, max_relative = 1e-12);
        assert_relative_eq!(s.volume, PI / 6.0 * 250e-6f64.powi(3), max_relative = 1e-15);
    }

    #[test]
    fn sphere_of_1_mm_has_reference_kerr() {
        let s = derive_sphere(1e-3, &constants()).unwrap();
        assert_relative_eq!(s.kerr_coeff / (2.0 * PI), 0.1e-9, max_relative = 1e-12);
    }

    #[test]
    fn non_positive_diameter_rejected() {
        assert!(matches!(derive_sphere(0.0, &constants()), Err(Error::Domain(_))));
        assert!(matches!(derive_sphere(-1e-3, &constants()), Err(Error::Domain(_))));
    }

    #[test]
    fn rabi_examples() {
        let c = constants();
        let mut s = derive_sphere(250e-6, &c).unwrap();
        s.n_spins = 3.5e16;
        let omega = rabi_frequency(3.9e-5, &s, &c).unwrap();
        assert_relative_eq!(omega, 7.1e14, max_relative = 0.02);
        assert_eq!(rabi_frequency(0.0, &s, &c).unwrap(), 0.0);
        let doubled = rabi_frequency(7.8e-5, &s, &c).unwrap();
        assert_relative_eq!(doubled, 2.0 * omega, max_relative = 1e-14);
        assert_relative_eq!(doubled, 1.42e15, max_relative = 0.02);
        assert!(rabi_frequency(-1e-6, &s, &c).is_err());
    }

    #[test]
    fn occupancy_zero_temperature_and_errors() {
        let c = constants();
        assert_eq!(thermal_occupancy(2.0 * PI * 1e7, 0.0, &c).unwrap(), 0.0);
        assert_eq!(thermal_occupancy(2.0 * PI * 1e10, 0.0, &c).unwrap(), 0.0);
        assert!(thermal_occupancy(0.0, 0.01, &c).is_err());
        assert!(thermal_occupancy(-1.0, 0.01, &c).is_err());
        assert!(thermal_occupancy(1.0, -0.01, &c).is_err());
    }

    #[test]
    fn baseline_is_valid() {
        let p = SystemParams::fig2_baseline();
        p.validate().unwrap();
        assert!(p.warnings().is_empty(), "{:?}", p.warnings());
        assert_relative_eq!(p.mechanical_q(), 1e5, max_relative = 1e-12);
        assert_relative_eq!(p.omega_0() - p.omega_a, 0.9 * p.omega_b, max_relative = 1e-9);
    }

    #[test]
    fn low_q_warns() {
        let mut p = SystemParams::fig2_baseline();
        p.gamma_b = p.omega_b / 50.0;
        assert!(p.warnings().iter().any(|w| w.contains("Markov")));
    }
}
