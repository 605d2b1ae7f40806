//! Semiclassical steady state of the driven system.
//!
//! Two routes are provided. [`solve_effective`] uses the large-detuning
//! closed forms, with Δ̃₁ and G fixed and the drive back-solved.
//! [`solve_physical`] solves the full nonlinear steady-state equations,
//! keeping every linewidth, for a given bare detuning Δ₁ and drive Ω.

use std::f64::consts::{FRAC_PI_2, SQRT_2};

use log::warn;
use nalgebra::Complex;

use crate::error::{Error, Result};
use crate::system::{Drive, PhysicalConstants, SystemParams};

type C64 = Complex<f64>;

const I: C64 = C64 { re: 0.0, im: 1.0 };

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 10_000;

/// Relaxation factor of the damped Picard iteration.
const RELAXATION: f64 = 0.5;
/// Picard iterations without residual improvement before falling back to bisection.
const STALL_WINDOW: usize = 200;
/// Samples of the scalar self-consistency function used for root bracketing.
const SCAN_POINTS: usize = 20_000;

#[derive(Debug, Clone, PartialEq)]
pub struct ModeAmplitudes {
    pub a_avg: C64,
    pub m1_avg: C64,
    pub m2_avg: C64,
    pub q_avg: f64,
    pub p_avg: f64,
    /// Effective detuning Δ̃₁ = Δ₁ + G₀⟨q⟩, rad/s.
    pub delta_1_tilde: f64,
    /// Effective magnomechanical coupling, real and non-negative in the gauge below.
    pub g_eff: f64,
    /// Drive Rabi frequency Ω, rad/s. Back-solved (and possibly negative) in effective mode.
    pub rabi: f64,
    /// Common phase φ applied to a, m₁, m₂ so that e^{iφ}⟨m₁⟩ = −i|⟨m₁⟩|,
    /// which makes G = i√2G₀e^{iφ}⟨m₁⟩ real and non-negative.
    /// The stored amplitudes are the unrotated ones.
    pub gauge_phase: f64,
    /// More than one fixed point was found; the reported one is the branch
    /// reached from zero initialization.
    pub bistable: bool,
}

impl ModeAmplitudes {
    fn zero(delta_1_tilde: f64) -> Self {
        Self {
            a_avg: C64::new(0.0, 0.0),
            m1_avg: C64::new(0.0, 0.0),
            m2_avg: C64::new(0.0, 0.0),
            q_avg: 0.0,
            p_avg: 0.0,
            delta_1_tilde,
            g_eff: 0.0,
            rabi: 0.0,
            gauge_phase: 0.0,
            bistable: false,
        }
    }

    /// Couplings without mean fields, for points where the closed forms are singular
    /// but the fluctuation dynamics is still well defined. Mean fields are NaN.
    pub fn undetermined(delta_1_tilde: f64, g_eff: f64) -> Self {
        let nan = C64::new(f64::NAN, f64::NAN);
        Self {
            a_avg: nan,
            m1_avg: nan,
            m2_avg: nan,
            q_avg: f64::NAN,
            p_avg: 0.0,
            delta_1_tilde,
            g_eff,
            rabi: f64::NAN,
            gauge_phase: 0.0,
            bistable: false,
        }
    }

    /// Mean magnon numbers ⟨m₁†m₁⟩, ⟨m₂†m₂⟩ in the semiclassical approximation.
    pub fn magnon_numbers(&self) -> (f64, f64) {
        (self.m1_avg.norm_sqr(), self.m2_avg.norm_sqr())
    }

    /// Amplitudes after the gauge rotation.
    pub fn gauged(&self) -> (C64, C64, C64) {
        let r = C64::from_polar(1.0, self.gauge_phase);
        (self.a_avg * r, self.m1_avg * r, self.m2_avg * r)
    }
}

/// Closed-form steady state with Δ̃₁ and G held fixed.
///
/// The drive Ω is back-solved from the coupling expression, then ⟨a⟩,
/// ⟨m₁⟩ and ⟨m₂⟩ follow from the large-detuning forms.
pub fn solve_effective(params: &SystemParams) -> Result<ModeAmplitudes> {
    let Drive::Effective { delta_1_tilde, g_eff } = params.drive else {
        return Err(Error::Domain("solve_effective requires an effective drive".into()));
    };
    for w in params.warnings() {
        warn!("{w}");
    }
    let (da, d1, d2) = (params.delta_a, delta_1_tilde, params.delta_2);
    let (g1, g2, g0) = (params.g_1, params.g_2, params.g_0);

    if d2 == 0.0 {
        return Err(Error::Singular("second magnon detuning is zero".into()));
    }
    let scale = da.abs().max(d1.abs()).max(d2.abs()).max(g1.abs()).max(g2.abs());
    let den = da * d1 * d2 - g1 * g1 * d2 - g2 * g2 * d1;
    if den.abs() <= 1e-12 * scale.powi(3) {
        return Err(Error::Singular(
            "Δ_aΔ̃₁Δ₂ − g₁²Δ₂ − g₂²Δ̃₁ vanishes".into(),
        ));
    }
    let num = da * d2 - g2 * g2;
    if num.abs() <= 1e-12 * scale.powi(2) {
        return Err(Error::Singular("Δ_aΔ₂ − g₂² vanishes; no finite drive gives G".into()));
    }
    if g_eff == 0.0 {
        return Ok(ModeAmplitudes::zero(d1));
    }
    if g0 == 0.0 {
        return Err(Error::Inconsistent(
            "G₀ = 0 cannot produce a non-zero effective coupling".into(),
        ));
    }

    let rabi = g_eff * den / (SQRT_2 * g0 * num);
    let a = I * (g1 * d2 * rabi / den);
    let m1 = -I * (rabi * num / den);
    let m2 = -a * (g2 / d2);
    let q = -(g0 / params.omega_b) * m1.norm_sqr();

    Ok(ModeAmplitudes {
        a_avg: a,
        m1_avg: m1,
        m2_avg: m2,
        q_avg: q,
        p_avg: 0.0,
        delta_1_tilde: d1,
        g_eff,
        rabi,
        gauge_phase: gauge_phase(m1),
        bistable: false,
    })
}

fn gauge_phase(m1: C64) -> f64 {
    if m1.norm() == 0.0 {
        0.0
    } else {
        let phi = -FRAC_PI_2 - m1.arg();
        // wrap into (−π, π]
        phi.sin().atan2(phi.cos())
    }
}

/// Scalar reduction of the steady-state equations for a physical drive.
///
/// With the cavity and second magnon eliminated, ⟨m₁⟩ = Ω / (i(Δ₁ − η|⟨m₁⟩|²) + σ)
/// where η = G₀²/ω_b and σ = κ₁ + g₁²/(iΔ_a + κ_a + g₂²/(iΔ₂ + κ₂)).
struct Reduced {
    rabi: f64,
    delta_1: f64,
    eta: f64,
    sigma: C64,
    chi_a: C64,
    chi_2: C64,
}

impl Reduced {
    fn new(params: &SystemParams, delta_1: f64, rabi: f64) -> Self {
        let chi_2 = C64::new(params.kappa_2, params.delta_2);
        let chi_a = C64::new(params.kappa_a, params.delta_a) + params.g_2 * params.g_2 / chi_2;
        Self {
            rabi,
            delta_1,
            eta: params.g_0 * params.g_0 / params.omega_b,
            sigma: params.kappa_1 + params.g_1 * params.g_1 / chi_a,
            chi_a,
            chi_2,
        }
    }

    fn m1_given_number(&self, x: f64) -> C64 {
        self.rabi / (I * (self.delta_1 - self.eta * x) + self.sigma)
    }

    fn map(&self, m1: C64) -> C64 {
        self.m1_given_number(m1.norm_sqr())
    }

    /// x − |f(x)|², whose roots are the self-consistent magnon numbers.
    fn number_mismatch(&self, x: f64) -> f64 {
        x - self.m1_given_number(x).norm_sqr()
    }

    /// Upper bound on |⟨m₁⟩|²: |denominator| ≥ Re σ > 0.
    fn number_bound(&self) -> f64 {
        (self.rabi / self.sigma.re).powi(2)
    }
}

/// Largest residual of the steady-state equations, relative to |Ω|.
pub fn steady_state_residual(params: &SystemParams, amps: &ModeAmplitudes, delta_1: f64, rabi: f64) -> f64 {
    let (a, m1, m2) = (amps.a_avg, amps.m1_avg, amps.m2_avg);
    let d1t = delta_1 + params.g_0 * amps.q_avg;
    let r_a = C64::new(params.kappa_a, params.delta_a) * a + I * (params.g_1 * m1 + params.g_2 * m2);
    let r_2 = C64::new(params.kappa_2, params.delta_2) * m2 + I * params.g_2 * a;
    let r_1 = C64::new(params.kappa_1, d1t) * m1 + I * params.g_1 * a - rabi;
    let r_q = params.omega_b * amps.q_avg + params.g_0 * m1.norm_sqr();
    let worst = r_a.norm().max(r_2.norm()).max(r_1.norm()).max(r_q.abs());
    if rabi == 0.0 {
        worst
    } else {
        worst / rabi.abs()
    }
}

/// Self-consistent steady state for a physical drive (bare Δ₁ and Ω or B₀).
///
/// Damped Picard iteration on ⟨m₁⟩ from zero; if it stalls, bisection on
/// |⟨m₁⟩|² for the smallest root. Multiple roots are flagged as bistable.
pub fn solve_physical(
    params: &SystemParams,
    constants: &PhysicalConstants,
    tol: f64,
    max_iter: usize,
) -> Result<ModeAmplitudes> {
    let Drive::Physical { delta_1, .. } = params.drive else {
        return Err(Error::Domain("solve_physical requires a physical drive".into()));
    };
    for w in params.warnings() {
        warn!("{w}");
    }
    let rabi = params.rabi(constants)?.unwrap_or(0.0);
    if rabi == 0.0 {
        return Ok(ModeAmplitudes::zero(delta_1));
    }
    let red = Reduced::new(params, delta_1, rabi);

    let roots = scan_roots(&red);
    let bistable = roots.len() > 1;

    let mut m1 = picard(&red, params, delta_1, tol, max_iter);
    if m1.is_none() {
        let bracket = roots.first().copied().ok_or_else(|| {
            Error::Numerical("no sign change of the self-consistency function found".into())
        })?;
        let x = bisect_number(&red, bracket);
        m1 = Some(red.m1_given_number(x));
    }
    let m1 = m1.expect("set above");
    let amps = assemble(params, &red, m1, delta_1, bistable);
    let residual = steady_state_residual(params, &amps, delta_1, rabi);
    if !(residual < tol) {
        return Err(Error::Convergence {
            iterations: max_iter,
            residual,
        });
    }
    if bistable {
        warn!(
            "mean-field equations have {} fixed points; reporting the branch reached from zero",
            roots.len()
        );
    }
    Ok(amps)
}

fn assemble(params: &SystemParams, red: &Reduced, m1: C64, delta_1: f64, bistable: bool) -> ModeAmplitudes {
    let a = -I * params.g_1 * m1 / red.chi_a;
    let m2 = -I * params.g_2 * a / red.chi_2;
    let q = -(params.g_0 / params.omega_b) * m1.norm_sqr();
    ModeAmplitudes {
        a_avg: a,
        m1_avg: m1,
        m2_avg: m2,
        q_avg: q,
        p_avg: 0.0,
        delta_1_tilde: delta_1 + params.g_0 * q,
        g_eff: SQRT_2 * params.g_0.abs() * m1.norm(),
        rabi: red.rabi,
        gauge_phase: gauge_phase(m1),
        bistable,
    }
}

fn picard(red: &Reduced, params: &SystemParams, delta_1: f64, tol: f64, max_iter: usize) -> Option<C64> {
    let mut m1 = C64::new(0.0, 0.0);
    let mut best = f64::INFINITY;
    let mut since_best = 0;
    for _ in 0..max_iter {
        let next = red.map(m1);
        m1 = m1 * (1.0 - RELAXATION) + next * RELAXATION;
        let amps = assemble(params, red, m1, delta_1, false);
        let r = steady_state_residual(params, &amps, delta_1, red.rabi);
        if r < tol {
            return Some(m1);
        }
        if !r.is_finite() {
            return None;
        }
        if r < 0.999 * best {
            best = r;
            since_best = 0;
        } else {
            since_best += 1;
            if since_best > STALL_WINDOW {
                return None;
            }
        }
    }
    None
}

/// Brackets of sign changes of `x − |f(x)|²` over [0, bound], in increasing x.
fn scan_roots(red: &Reduced) -> Vec<(f64, f64)> {
    let upper = red.number_bound() * (1.0 + 1e-9);
    let mut out = Vec::new();
    let mut x_prev = 0.0;
    let mut h_prev = red.number_mismatch(0.0);
    for k in 1..=SCAN_POINTS {
        let x = upper * k as f64 / SCAN_POINTS as f64;
        let h = red.number_mismatch(x);
        if h_prev == 0.0 {
            out.push((x_prev, x_prev));
        } else if h_prev.signum() != h.signum() && h != 0.0 {
            out.push((x_prev, x));
        }
        x_prev = x;
        h_prev = h;
    }
    out
}

fn bisect_number(red: &Reduced, (mut lo, mut hi): (f64, f64)) -> f64 {
    let h_lo = red.number_mismatch(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let h = red.number_mismatch(mid);
        if h == 0.0 {
            return mid;
        }
        if h.signum() == h_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Dispatches on the drive mode with default tolerances.
pub fn solve(params: &SystemParams, constants: &PhysicalConstants) -> Result<ModeAmplitudes> {
    match params.drive {
        Drive::Effective { .. } => solve_effective(params),
        Drive::Physical { .. } => solve_physical(params, constants, DEFAULT_TOL, DEFAULT_MAX_ITER),
    }
}
