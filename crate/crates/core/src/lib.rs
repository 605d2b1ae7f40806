//! Linearized Gaussian dynamics of a driven cavity with two magnon modes and
//! one mechanical mode: mean fields, stability, steady-state covariances,
//! logarithmic negativity and parameter sweeps.
//!
//! Internal units are SI with angular frequencies in rad/s. Configuration
//! files use Hz and are converted once on load.

// `!(x > 0.0)` style checks are used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod dynamics;
pub mod entanglement;
pub mod error;
pub mod lyapunov;
pub mod mode;
pub mod pipeline;
pub mod report;
pub mod steady;
pub mod sweep;
pub mod system;
pub mod validity;

pub use dynamics::{build_diffusion, build_drift, check_stability, DiffusionMatrix, DriftMatrix, StabilityResult};
pub use entanglement::{entanglement, log_negativity, symplectic_spectrum, EntanglementResult};
pub use error::{Error, Result};
pub use lyapunov::{integrate_to_steady, solve_steady, CovarianceMatrix};
pub use mode::{Mode, ModePair};
pub use pipeline::{evaluate_point, pair_log_negativity, steady_covariance, PointReport};
pub use steady::{solve_effective, solve_physical, ModeAmplitudes};
pub use sweep::{critical_temperature, sweep, temperature_curve, AxisSpec, Knob, SweepResult};
pub use system::{derive_sphere, rabi_frequency, thermal_occupancy, Drive, PhysicalConstants, SystemParams};
pub use validity::{audit_validity, ValidityReport, ValidityThresholds};
