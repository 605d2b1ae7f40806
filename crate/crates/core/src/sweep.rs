//! Parameter grids, temperature curves and critical temperatures.
//!
//! Grid points are independent and evaluated in parallel on the current
//! rayon pool; every result lands in a pre-assigned slot, so the output does
//! not depend on evaluation order or thread count.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{build_diffusion, build_drift, check_stability, DriftMatrix};
use crate::entanglement::entanglement;
use crate::error::{Error, Result};
use crate::lyapunov::solve_unchecked;
use crate::mode::ModePair;
use crate::pipeline::amplitudes_or_undetermined;
use crate::system::{Drive, PhysicalConstants, SystemParams};
use crate::validity::{audit_validity, ValidityThresholds};

/// Number of samples used to check a temperature bracket for a single sign change.
const PRESCAN_POINTS: usize = 8;

pub const DEFAULT_TC_TOL: f64 = 1e-3;

/// A parameter that a sweep axis can vary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "knob", rename_all = "snake_case")]
pub enum Knob {
    /// Cavity detuning Δ_a, rad/s.
    DeltaA,
    /// Second magnon detuning Δ₂, rad/s.
    Delta2,
    /// Δ_a and Δ₂ together (Δ₂ = Δ_a), rad/s.
    DeltaATied,
    /// Effective detuning Δ̃₁, rad/s (effective drive only).
    Delta1Tilde,
    /// g₂/g₁ with g₁ fixed.
    G2OverG1,
    /// G/g₁ with g₁ fixed (effective drive only).
    GOverG1,
    /// K
    Temperature,
    /// κ₁ = κ₂, rad/s; with `cavity_ratio` set, κ_a follows as ratio·κ₁.
    KappaMagnon { cavity_ratio: Option<f64> },
}

impl Knob {
    pub fn name(&self) -> &'static str {
        match self {
            Knob::DeltaA => "delta_a",
            Knob::Delta2 => "delta_2",
            Knob::DeltaATied => "delta_a_tied",
            Knob::Delta1Tilde => "delta_1_tilde",
            Knob::G2OverG1 => "g2_over_g1",
            Knob::GOverG1 => "g_over_g1",
            Knob::Temperature => "temperature",
            Knob::KappaMagnon { .. } => "kappa_magnon",
        }
    }

    /// Whether values of this knob are angular frequencies (Hz·2π at the config boundary).
    pub fn is_frequency(&self) -> bool {
        matches!(
            self,
            Knob::DeltaA | Knob::Delta2 | Knob::DeltaATied | Knob::Delta1Tilde | Knob::KappaMagnon { .. }
        )
    }

    fn touches(&self) -> &'static [&'static str] {
        match self {
            Knob::DeltaA => &["delta_a"],
            Knob::Delta2 => &["delta_2"],
            Knob::DeltaATied => &["delta_a", "delta_2"],
            Knob::Delta1Tilde => &["delta_1_tilde"],
            Knob::G2OverG1 => &["g_2"],
            Knob::GOverG1 => &["g_eff"],
            Knob::Temperature => &["temperature"],
            Knob::KappaMagnon { cavity_ratio: None } => &["kappa_1"],
            Knob::KappaMagnon { cavity_ratio: Some(_) } => &["kappa_1", "kappa_a"],
        }
    }

    pub fn apply(&self, params: &mut SystemParams, value: f64) -> Result<()> {
        match *self {
            Knob::DeltaA => params.delta_a = value,
            Knob::Delta2 => params.delta_2 = value,
            Knob::DeltaATied => {
                params.delta_a = value;
                params.delta_2 = value;
            }
            Knob::Delta1Tilde => match &mut params.drive {
                Drive::Effective { delta_1_tilde, .. } => *delta_1_tilde = value,
                Drive::Physical { .. } => {
                    return Err(Error::Domain("delta_1_tilde can only be swept with an effective drive".into()))
                }
            },
            Knob::G2OverG1 => params.g_2 = value * params.g_1,
            Knob::GOverG1 => match &mut params.drive {
                Drive::Effective { g_eff, .. } => *g_eff = value * params.g_1,
                Drive::Physical { .. } => {
                    return Err(Error::Domain("g_over_g1 can only be swept with an effective drive".into()))
                }
            },
            Knob::Temperature => params.temperature = value,
            Knob::KappaMagnon { cavity_ratio } => {
                params.kappa_1 = value;
                params.kappa_2 = value;
                if let Some(r) = cavity_ratio {
                    params.kappa_a = r * value;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Knob {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Knob {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "delta_a" => Knob::DeltaA,
            "delta_2" => Knob::Delta2,
            "delta_a_tied" => Knob::DeltaATied,
            "delta_1_tilde" => Knob::Delta1Tilde,
            "g2_over_g1" => Knob::G2OverG1,
            "g_over_g1" => Knob::GOverG1,
            "temperature" => Knob::Temperature,
            "kappa_magnon" => Knob::KappaMagnon { cavity_ratio: None },
            other => return Err(Error::Domain(format!("unknown sweep knob `{other}`"))),
        })
    }
}

/// A linear axis. Internal units: rad/s for frequency knobs, K, or dimensionless.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisSpec {
    pub knob: Knob,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl AxisSpec {
    pub fn new(knob: Knob, start: f64, stop: f64, points: usize) -> Result<Self> {
        let axis = Self { knob, start, stop, points };
        axis.validate()?;
        Ok(axis)
    }

    /// A single-point axis, useful to pin a knob at one value.
    pub fn single(knob: Knob, value: f64) -> Self {
        Self { knob, start: value, stop: value, points: 1 }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.start.is_finite() || !self.stop.is_finite() {
            return Err(Error::Domain(format!("axis {} has non-finite bounds", self.knob)));
        }
        match self.points {
            0 => Err(Error::Domain(format!("axis {} has no points", self.knob))),
            1 if self.start != self.stop => Err(Error::Domain(format!(
                "single-point axis {} needs start == stop",
                self.knob
            ))),
            n if n >= 2 && self.start == self.stop => Err(Error::Domain(format!(
                "axis {} needs start != stop",
                self.knob
            ))),
            _ => Ok(()),
        }
    }

    pub fn value(&self, k: usize) -> f64 {
        if self.points == 1 {
            self.start
        } else {
            self.start + (self.stop - self.start) * k as f64 / (self.points - 1) as f64
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.points).map(|k| self.value(k)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PointStatus {
    Stable,
    Unstable,
    /// The point could not be evaluated (e.g. mean fields failed to converge).
    Failed,
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub axes: Vec<AxisSpec>,
    pub pair: ModePair,
    /// Row-major over the axes (first axis outermost). NaN marks points that
    /// are not stable; zero means stable and separable.
    pub values: Vec<f64>,
    pub validity: Vec<bool>,
    pub status: Vec<PointStatus>,
}

impl SweepResult {
    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.points).collect()
    }

    fn index(&self, idx: &[usize]) -> usize {
        idx.iter()
            .zip(&self.axes)
            .fold(0, |acc, (i, a)| acc * a.points + i)
    }

    pub fn get(&self, idx: &[usize]) -> f64 {
        self.values[self.index(idx)]
    }

    pub fn status_at(&self, idx: &[usize]) -> PointStatus {
        self.status[self.index(idx)]
    }

    fn unflatten(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.axes.len()];
        for (k, a) in self.axes.iter().enumerate().rev() {
            idx[k] = flat % a.points;
            flat /= a.points;
        }
        idx
    }

    /// Grid index of the largest finite value; first occurrence wins on ties.
    pub fn argmax(&self) -> Option<Vec<usize>> {
        let mut best: Option<(usize, f64)> = None;
        for (k, &v) in self.values.iter().enumerate() {
            if v.is_finite() && best.is_none_or(|(_, b)| v > b) {
                best = Some((k, v));
            }
        }
        best.map(|(k, _)| self.unflatten(k))
    }

    pub fn max(&self) -> Option<f64> {
        self.argmax().map(|i| self.get(&i))
    }

    /// Axis values at a grid index.
    pub fn coordinates(&self, idx: &[usize]) -> Vec<f64> {
        idx.iter().zip(&self.axes).map(|(&i, a)| a.value(i)).collect()
    }
}

fn check_axes(axes: &[AxisSpec]) -> Result<()> {
    if axes.is_empty() || axes.len() > 2 {
        return Err(Error::Domain(format!("a sweep takes one or two axes, got {}", axes.len())));
    }
    for a in axes {
        a.validate()?;
    }
    if axes.len() == 2 {
        let (x, y) = (axes[0].knob.touches(), axes[1].knob.touches());
        if x.iter().any(|n| y.contains(n)) {
            return Err(Error::Domain(format!(
                "axes {} and {} vary the same parameter",
                axes[0].knob, axes[1].knob
            )));
        }
    }
    Ok(())
}

struct PointValue {
    value: f64,
    valid: bool,
    status: PointStatus,
}

fn evaluate(
    params: &SystemParams,
    constants: &PhysicalConstants,
    pair: ModePair,
    thresholds: ValidityThresholds,
) -> Result<PointValue> {
    let failed = PointValue { value: f64::NAN, valid: false, status: PointStatus::Failed };
    if params.validate().is_err() {
        return Ok(failed);
    }
    let amps = match amplitudes_or_undetermined(params, constants) {
        Ok(a) => a,
        Err(_) => return Ok(failed),
    };
    let drift = build_drift(params, &amps);
    let stability = check_stability(&drift)?;
    let valid = audit_validity(params, &amps, &drift, constants, thresholds).is_valid();
    if !stability.stable {
        return Ok(PointValue { value: f64::NAN, valid, status: PointStatus::Unstable });
    }
    let diffusion = build_diffusion(params, constants)?;
    let cm = solve_unchecked(&drift, &diffusion)?;
    let e = entanglement(&cm, pair)?;
    Ok(PointValue { value: e.log_negativity, valid, status: PointStatus::Stable })
}

/// Evaluates E_N of `pair` on a one- or two-dimensional grid around `params`.
pub fn sweep(
    params: &SystemParams,
    constants: &PhysicalConstants,
    axes: &[AxisSpec],
    pair: ModePair,
    thresholds: ValidityThresholds,
) -> Result<SweepResult> {
    check_axes(axes)?;
    let total: usize = axes.iter().map(|a| a.points).product();
    let shape: Vec<usize> = axes.iter().map(|a| a.points).collect();
    let points: Vec<PointValue> = (0..total)
        .into_par_iter()
        .map(|flat| {
            let mut p = params.clone();
            let mut rest = flat;
            for (k, axis) in axes.iter().enumerate().rev() {
                let i = rest % shape[k];
                rest /= shape[k];
                axis.knob.apply(&mut p, axis.value(i))?;
            }
            evaluate(&p, constants, pair, thresholds)
        })
        .collect::<Result<_>>()?;
    Ok(SweepResult {
        axes: axes.to_vec(),
        pair,
        values: points.iter().map(|p| p.value).collect(),
        validity: points.iter().map(|p| p.valid).collect(),
        status: points.iter().map(|p| p.status).collect(),
    })
}

/// Drift matrix of `params` after checking it is stable.
fn stable_drift(params: &SystemParams, constants: &PhysicalConstants) -> Result<DriftMatrix> {
    params.validate()?;
    let amps = amplitudes_or_undetermined(params, constants)?;
    let drift = build_drift(params, &amps);
    let s = check_stability(&drift)?;
    if !s.stable {
        return Err(Error::Unstable { max_re_eig: s.max_re_eig });
    }
    Ok(drift)
}

/// Signed −ln(2ν̃₋) at temperature `t`; positive iff entangled.
fn entanglement_margin(
    params: &SystemParams,
    constants: &PhysicalConstants,
    drift: &DriftMatrix,
    pair: ModePair,
    t: f64,
) -> Result<f64> {
    let p = SystemParams { temperature: t, ..params.clone() };
    let diffusion = build_diffusion(&p, constants)?;
    let cm = solve_unchecked(drift, &diffusion)?;
    let e = entanglement(&cm, pair)?;
    Ok(if e.nu_minus == 0.0 { f64::INFINITY } else { -(2.0 * e.nu_minus).ln() })
}

/// E_N of `pair` at each temperature, everything else held at `params`.
pub fn temperature_curve(
    params: &SystemParams,
    constants: &PhysicalConstants,
    temps: &[f64],
    pair: ModePair,
) -> Result<Vec<f64>> {
    if temps.iter().any(|t| !(*t >= 0.0)) {
        return Err(Error::Domain("temperatures must be non-negative".into()));
    }
    if temps.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Domain("temperatures must be ascending".into()));
    }
    let drift = match stable_drift(params, constants) {
        Ok(d) => d,
        Err(Error::Unstable { .. }) => return Ok(vec![f64::NAN; temps.len()]),
        Err(e) => return Err(e),
    };
    temps
        .par_iter()
        .map(|&t| entanglement_margin(params, constants, &drift, pair, t).map(|m| m.max(0.0)))
        .collect()
}

/// Temperature below which `pair` is entangled, by bisection on −ln(2ν̃₋).
///
/// Requires E_N(t_low) > 0 and E_N(t_high) = 0, and a single sign change
/// over an 8-point prescan of the bracket.
pub fn critical_temperature(
    params: &SystemParams,
    constants: &PhysicalConstants,
    pair: ModePair,
    t_low: f64,
    t_high: f64,
    tol: f64,
) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    if !(t_low >= 0.0) || !(t_high > t_low) {
        return Err(Error::Bracket(format!(
            "need 0 <= t_low < t_high, got t_low = {t_low}, t_high = {t_high}"
        )));
    }
    let drift = stable_drift(params, constants)?;
    let f = |t: f64| entanglement_margin(params, constants, &drift, pair, t);

    let f_low = f(t_low)?;
    if !(f_low > 0.0) {
        return Err(Error::Bracket(format!(
            "t_low = {t_low} K is not entangled (E_N = 0); lower the lower endpoint"
        )));
    }
    let f_high = f(t_high)?;
    if f_high > 0.0 {
        return Err(Error::Bracket(format!(
            "t_high = {t_high} K is still entangled; raise the upper endpoint"
        )));
    }
    let samples: Vec<f64> = (0..PRESCAN_POINTS)
        .map(|k| {
            let t = t_low + (t_high - t_low) * k as f64 / (PRESCAN_POINTS - 1) as f64;
            f(t)
        })
        .collect::<Result<_>>()?;
    let changes = samples
        .windows(2)
        .filter(|w| (w[0] > 0.0) != (w[1] > 0.0))
        .count();
    if changes != 1 {
        return Err(Error::Bracket(format!(
            "entanglement changes sign {changes} times in [{t_low}, {t_high}] K; bracket is not monotone"
        )));
    }

    let (mut lo, mut hi) = (t_low, t_high);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if f(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Critical temperature at each point of a one-dimensional axis. Points
/// that are unstable or whose bracket fails are NaN.
pub fn critical_temperature_curve(
    params: &SystemParams,
    constants: &PhysicalConstants,
    axis: &AxisSpec,
    pair: ModePair,
    t_low: f64,
    t_high: f64,
    tol: f64,
) -> Result<SweepResult> {
    check_axes(std::slice::from_ref(axis))?;
    if axis.knob == Knob::Temperature {
        return Err(Error::Domain("cannot sweep temperature while solving for it".into()));
    }
    let out: Vec<(f64, PointStatus)> = (0..axis.points)
        .into_par_iter()
        .map(|i| {
            let mut p = params.clone();
            axis.knob.apply(&mut p, axis.value(i))?;
            Ok(match critical_temperature(&p, constants, pair, t_low, t_high, tol) {
                Ok(t) => (t, PointStatus::Stable),
                Err(Error::Unstable { .. }) => (f64::NAN, PointStatus::Unstable),
                Err(Error::Bracket(_)) => (f64::NAN, PointStatus::Failed),
                Err(e) => return Err(e),
            })
        })
        .collect::<Result<_>>()?;
    Ok(SweepResult {
        axes: vec![*axis],
        pair,
        values: out.iter().map(|o| o.0).collect(),
        validity: out.iter().map(|o| o.1 == PointStatus::Stable).collect(),
        status: out.iter().map(|o| o.1).collect(),
    })
}
