//! TOML run configuration.
//!
//! Frequencies in config files are ordinary frequencies ν = ω/2π in Hz, and
//! may also be written as multiples of the mechanical frequency, e.g.
//! `delta_a = "-0.9 omega_b"`. Temperatures are in K, lengths in m, fields
//! in T. [`ConfigFile`] is the external form; [`RunConfig`] holds the
//! converted internal values. The only Hz → rad/s conversion is [`hz`].

use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mode::ModePair;
use crate::sweep::{AxisSpec, Knob, DEFAULT_TC_TOL};
use crate::system::{derive_sphere, Drive, DriveStrength, PhysicalConstants, SystemParams, DEFAULT_DIAMETER};
use crate::validity::ValidityThresholds;

/// Presets bundled into the binary, by name.
pub const PRESETS: &[(&str, &str)] = &[
    ("fig2_baseline", include_str!("../presets/fig2_baseline.toml")),
    ("fig2a", include_str!("../presets/fig2a.toml")),
    ("fig2b", include_str!("../presets/fig2b.toml")),
    ("fig2c", include_str!("../presets/fig2c.toml")),
    ("fig2d", include_str!("../presets/fig2d.toml")),
    ("fig3a", include_str!("../presets/fig3a.toml")),
    ("fig3b", include_str!("../presets/fig3b.toml")),
    ("fig3c", include_str!("../presets/fig3c.toml")),
];

const MAX_PRESET_DEPTH: usize = 8;

/// ν in Hz to ω in rad/s.
pub fn hz(nu: f64) -> f64 {
    2.0 * PI * nu
}

/// ω in rad/s to ν in Hz.
pub fn to_hz(omega: f64) -> f64 {
    omega / (2.0 * PI)
}

/// A frequency as written in a config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Freq {
    Hz(f64),
    /// `"<k> omega_b"`, `"<k>*omega_b"` or `"omega_b"`.
    Scaled(String),
}

impl Freq {
    fn resolve(&self, omega_b_hz: f64, path: &str) -> Result<f64> {
        match self {
            Freq::Hz(v) => Ok(*v),
            Freq::Scaled(s) => {
                let k = parse_multiple(s)
                    .ok_or_else(|| Error::config(path, format!("expected Hz or `<k> omega_b`, got `{s}`")))?;
                Ok(k * omega_b_hz)
            }
        }
    }
}

fn parse_multiple(s: &str) -> Option<f64> {
    let head = s.trim().strip_suffix("omega_b")?.trim_end();
    let head = head.strip_suffix('*').unwrap_or(head).trim();
    match head {
        "" | "+" => Some(1.0),
        "-" => Some(-1.0),
        h => h.parse().ok(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    Point,
    Sweep,
    Tcurve,
    Tcrit,
    Audit,
}

impl CommandKind {
    pub fn name(&self) -> &'static str {
        match self {
            CommandKind::Point => "point",
            CommandKind::Sweep => "sweep",
            CommandKind::Tcurve => "tcurve",
            CommandKind::Tcrit => "tcrit",
            CommandKind::Audit => "audit",
        }
    }
}

impl fmt::Display for CommandKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CommandKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "point" => CommandKind::Point,
            "sweep" => CommandKind::Sweep,
            "tcurve" => CommandKind::Tcurve,
            "tcrit" => CommandKind::Tcrit,
            "audit" => CommandKind::Audit,
            other => return Err(Error::config("command", format!("unknown command `{other}`"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    #[default]
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::config("output.format", format!("expected csv or json, got `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DriveModeName {
    Effective,
    Physical,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DriveSection {
    pub mode: DriveModeName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_1_tilde: Option<Freq>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g_eff: Option<Freq>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_1: Option<Freq>,
    /// Ω/2π, Hz.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rabi: Option<f64>,
    /// B₀, T.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSection {
    pub omega_a: Freq,
    pub omega_b: Freq,
    pub delta_a: Freq,
    pub delta_2: Freq,
    pub kappa_a: Freq,
    pub kappa_1: Freq,
    pub kappa_2: Freq,
    pub gamma_b: Freq,
    pub g_1: Freq,
    pub g_2: Freq,
    pub g_0: Freq,
    /// K
    pub temperature: f64,
    /// m; 250 μm when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sphere_diameter: Option<f64>,
    pub drive: DriveSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisSection {
    pub knob: String,
    pub start: Freq,
    pub stop: Freq,
    pub points: usize,
    /// κ_a/κ₁ held fixed along a `kappa_magnon` axis.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cavity_ratio: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    #[default]
    LogNegativity,
    CriticalTemperature,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub pair: String,
    pub axes: Vec<AxisSection>,
    #[serde(default)]
    pub quantity: Quantity,
    /// Bracket for `quantity = "critical_temperature"`, K.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_low: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_high: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TemperatureRange {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TcurveSection {
    pub pair: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub temperatures: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub range: Option<TemperatureRange>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TcritSection {
    pub pair: String,
    pub t_low: f64,
    pub t_high: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default)]
    pub format: Format,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
}

/// A config file as written, before unit conversion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub command: Option<CommandKind>,
    pub system: SystemSection,
    #[serde(default)]
    pub thresholds: ValidityThresholds,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tcurve: Option<TcurveSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tcrit: Option<TcritSection>,
    #[serde(default)]
    pub output: OutputSection,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SweepQuantity {
    LogNegativity,
    CriticalTemperature { t_low: f64, t_high: f64, tol: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepArgs {
    pub pair: ModePair,
    pub axes: Vec<AxisSpec>,
    pub quantity: SweepQuantity,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TcurveArgs {
    pub pair: ModePair,
    pub temperatures: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TcritArgs {
    pub pair: ModePair,
    pub t_low: f64,
    pub t_high: f64,
    pub tol: f64,
}

/// A fully resolved run, in internal units.
#[derive(Debug, Clone)]
pub struct RunConfig {
    /// The resolved external form: presets merged, multiples of ω_b expanded
    /// to Hz, defaults filled. Writing it out and loading it again gives the
    /// same internal values bit for bit.
    pub resolved: ConfigFile,
    pub params: SystemParams,
    pub constants: PhysicalConstants,
    pub thresholds: ValidityThresholds,
    pub command: Option<CommandKind>,
    pub sweep: Option<SweepArgs>,
    pub tcurve: Option<TcurveArgs>,
    pub tcrit: Option<TcritArgs>,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    /// The resolved configuration as TOML.
    pub fn resolved_toml(&self) -> Result<String> {
        toml::to_string(&self.resolved).map_err(|e| Error::config("", e.to_string()))
    }
}

pub fn preset_source(name: &str) -> Result<&'static str> {
    PRESETS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, s)| *s)
        .ok_or_else(|| {
            let known: Vec<_> = PRESETS.iter().map(|(n, _)| *n).collect();
            Error::config("preset", format!("unknown preset `{name}`; known: {}", known.join(", ")))
        })
}

fn parse_table(text: &str, origin: &str) -> Result<toml::Table> {
    text.parse::<toml::Table>()
        .map_err(|e| Error::config(origin, e.to_string().trim_end().to_string()))
}

/// Recursively overlays `over` onto `base`; tables merge, everything else
/// replaces. A table whose `mode` changes is replaced whole, so switching
/// the drive mode does not inherit keys of the other mode.
fn merge(base: &mut toml::Table, over: toml::Table) {
    for (k, v) in over {
        match (base.get_mut(&k), v) {
            (Some(toml::Value::Table(b)), toml::Value::Table(o))
                if o.get("mode").is_none_or(|m| b.get("mode") == Some(m)) =>
            {
                merge(b, o)
            }
            (_, v) => {
                base.insert(k, v);
            }
        }
    }
}

/// Expands the `preset` chain of `table` into one merged table.
fn expand_presets(mut table: toml::Table, cli_preset: Option<&str>) -> Result<toml::Table> {
    let file_preset = table.remove("preset");
    let mut name = match (file_preset, cli_preset) {
        (Some(toml::Value::String(f)), Some(c)) if f != c => {
            return Err(Error::config(
                "preset",
                format!("config names preset `{f}` but `{c}` was requested"),
            ))
        }
        (Some(toml::Value::String(f)), _) => Some(f),
        (Some(_), _) => return Err(Error::config("preset", "expected a preset name")),
        (None, c) => c.map(str::to_string),
    };
    let mut depth = 0;
    while let Some(n) = name.take() {
        depth += 1;
        if depth > MAX_PRESET_DEPTH {
            return Err(Error::config("preset", "preset chain is too deep"));
        }
        let mut base = parse_table(preset_source(&n)?, &format!("preset {n}"))?;
        name = match base.remove("preset") {
            Some(toml::Value::String(s)) => Some(s),
            _ => None,
        };
        merge(&mut base, table);
        table = base;
    }
    Ok(table)
}

fn deserialize(table: toml::Table) -> Result<ConfigFile> {
    let value = toml::Value::Table(table);
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        Error::config(path, e.into_inner().to_string().trim_end().to_string())
    })
}

/// Parses config text, using `preset` (if given) as the base layer.
pub fn parse_config(text: &str, preset: Option<&str>) -> Result<RunConfig> {
    let table = expand_presets(parse_table(text, "config")?, preset)?;
    resolve(deserialize(table)?)
}

pub fn load_config(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::config(path.display().to_string(), e.to_string()))?;
    parse_config(&text, None)
}

/// A bundled preset on its own.
pub fn load_preset(name: &str) -> Result<RunConfig> {
    parse_config("", Some(name))
}

fn parse_pair(s: &str, path: &str) -> Result<ModePair> {
    s.parse::<ModePair>().map_err(|e| Error::config(path, e.to_string()))
}

fn require(cond: bool, path: &str, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::config(path, msg()))
    }
}

/// Converts a parsed file to internal units and checks unit ranges.
pub fn resolve(file: ConfigFile) -> Result<RunConfig> {
    let mut resolved = file;
    let sys = &mut resolved.system;

    let omega_b = match sys.omega_b {
        Freq::Hz(v) => v,
        Freq::Scaled(_) => return Err(Error::config("system.omega_b", "must be given in Hz")),
    };
    require(omega_b > 0.0 && omega_b.is_finite(), "system.omega_b", || {
        format!("must be positive, got {omega_b}")
    })?;

    let fix = |f: &mut Freq, key: &str| -> Result<f64> {
        let v = f.resolve(omega_b, &format!("system.{key}"))?;
        *f = Freq::Hz(v);
        Ok(v)
    };
    let omega_a = fix(&mut sys.omega_a, "omega_a")?;
    let delta_a = fix(&mut sys.delta_a, "delta_a")?;
    let delta_2 = fix(&mut sys.delta_2, "delta_2")?;
    let kappa_a = fix(&mut sys.kappa_a, "kappa_a")?;
    let kappa_1 = fix(&mut sys.kappa_1, "kappa_1")?;
    let kappa_2 = fix(&mut sys.kappa_2, "kappa_2")?;
    let gamma_b = fix(&mut sys.gamma_b, "gamma_b")?;
    let g_1 = fix(&mut sys.g_1, "g_1")?;
    let g_2 = fix(&mut sys.g_2, "g_2")?;
    let g_0 = fix(&mut sys.g_0, "g_0")?;

    // Unit-range sanity: rates and detunings are far below the carrier.
    require(omega_a > omega_b, "system.omega_a", || {
        format!("{omega_a} Hz is not above omega_b = {omega_b} Hz; frequencies are ω/2π in Hz")
    })?;
    for (key, v) in [("kappa_a", kappa_a), ("kappa_1", kappa_1), ("kappa_2", kappa_2), ("gamma_b", gamma_b)] {
        require(v > 0.0 && v < omega_a, &format!("system.{key}"), || {
            format!("{v} Hz must be positive and below omega_a = {omega_a} Hz")
        })?;
    }
    for (key, v) in [("delta_a", delta_a), ("delta_2", delta_2), ("g_1", g_1), ("g_2", g_2)] {
        require(v.abs() < omega_a, &format!("system.{key}"), || {
            format!("|{v}| Hz must be below omega_a = {omega_a} Hz")
        })?;
    }
    require(
        sys.temperature >= 0.0 && sys.temperature.is_finite(),
        "system.temperature",
        || format!("must be a non-negative number of kelvin, got {}", sys.temperature),
    )?;

    let diameter = *sys.sphere_diameter.get_or_insert(DEFAULT_DIAMETER);
    let constants = PhysicalConstants::default();
    let sphere = derive_sphere(diameter, &constants)
        .map_err(|e| Error::config("system.sphere_diameter", e.to_string()))?;

    let d = &mut sys.drive;
    let drive = match d.mode {
        DriveModeName::Effective => {
            require(d.delta_1.is_none() && d.rabi.is_none() && d.field.is_none(), "system.drive", || {
                "delta_1, rabi and field belong to mode = \"physical\"".into()
            })?;
            let d1t = d
                .delta_1_tilde
                .as_mut()
                .ok_or_else(|| Error::config("system.drive.delta_1_tilde", "required for mode = \"effective\""))?;
            let delta_1_tilde = d1t.resolve(omega_b, "system.drive.delta_1_tilde")?;
            *d1t = Freq::Hz(delta_1_tilde);
            let g = d
                .g_eff
                .as_mut()
                .ok_or_else(|| Error::config("system.drive.g_eff", "required for mode = \"effective\""))?;
            let g_eff = g.resolve(omega_b, "system.drive.g_eff")?;
            *g = Freq::Hz(g_eff);
            require(g_eff >= 0.0, "system.drive.g_eff", || format!("must be non-negative, got {g_eff}"))?;
            Drive::Effective { delta_1_tilde: hz(delta_1_tilde), g_eff: hz(g_eff) }
        }
        DriveModeName::Physical => {
            require(d.delta_1_tilde.is_none() && d.g_eff.is_none(), "system.drive", || {
                "delta_1_tilde and g_eff belong to mode = \"effective\"".into()
            })?;
            let d1 = d
                .delta_1
                .as_mut()
                .ok_or_else(|| Error::config("system.drive.delta_1", "required for mode = \"physical\""))?;
            let delta_1 = d1.resolve(omega_b, "system.drive.delta_1")?;
            *d1 = Freq::Hz(delta_1);
            let strength = match (d.rabi, d.field) {
                (Some(r), None) => DriveStrength::Rabi(hz(r)),
                (None, Some(b)) => DriveStrength::Field(b),
                _ => {
                    return Err(Error::config(
                        "system.drive",
                        "give exactly one of rabi (Hz) or field (T)",
                    ))
                }
            };
            Drive::Physical { delta_1: hz(delta_1), strength }
        }
    };

    let params = SystemParams {
        omega_a: hz(omega_a),
        omega_b: hz(omega_b),
        delta_a: hz(delta_a),
        delta_2: hz(delta_2),
        kappa_a: hz(kappa_a),
        kappa_1: hz(kappa_1),
        kappa_2: hz(kappa_2),
        gamma_b: hz(gamma_b),
        g_1: hz(g_1),
        g_2: hz(g_2),
        g_0: hz(g_0),
        temperature: sys.temperature,
        sphere,
        drive,
    };
    params
        .validate()
        .map_err(|e| Error::config("system", e.to_string()))?;

    let t = resolved.thresholds;
    require(t.excitation > 0.0 && t.kerr > 0.0 && t.min_q > 0.0, "thresholds", || {
        "thresholds must be positive".into()
    })?;

    let sweep = match resolved.sweep.as_mut() {
        Some(s) => Some(resolve_sweep(s, omega_b)?),
        None => None,
    };
    let tcurve = match &resolved.tcurve {
        Some(s) => Some(resolve_tcurve(s)?),
        None => None,
    };
    let tcrit = match resolved.tcrit.as_mut() {
        Some(s) => {
            let tol = *s.tol.get_or_insert(DEFAULT_TC_TOL);
            require(tol > 0.0, "tcrit.tol", || format!("must be positive, got {tol}"))?;
            Some(TcritArgs { pair: parse_pair(&s.pair, "tcrit.pair")?, t_low: s.t_low, t_high: s.t_high, tol })
        }
        None => None,
    };

    Ok(RunConfig {
        params,
        constants,
        thresholds: t,
        command: resolved.command,
        sweep,
        tcurve,
        tcrit,
        format: resolved.output.format,
        out: resolved.output.path.clone(),
        resolved,
    })
}

fn resolve_sweep(s: &mut SweepSection, omega_b: f64) -> Result<SweepArgs> {
    let pair = parse_pair(&s.pair, "sweep.pair")?;
    require(!s.axes.is_empty() && s.axes.len() <= 2, "sweep.axes", || {
        format!("need one or two axes, got {}", s.axes.len())
    })?;
    let mut axes = Vec::new();
    for (i, a) in s.axes.iter_mut().enumerate() {
        let path = format!("sweep.axes[{i}]");
        let mut knob: Knob = a.knob.parse().map_err(|e: Error| Error::config(format!("{path}.knob"), e.to_string()))?;
        if let Knob::KappaMagnon { cavity_ratio } = &mut knob {
            *cavity_ratio = a.cavity_ratio;
        } else {
            require(a.cavity_ratio.is_none(), &format!("{path}.cavity_ratio"), || {
                "only applies to knob = \"kappa_magnon\"".into()
            })?;
        }
        let bound = |f: &mut Freq, key: &str| -> Result<f64> {
            let p = format!("{path}.{key}");
            if knob.is_frequency() {
                let v = f.resolve(omega_b, &p)?;
                *f = Freq::Hz(v);
                Ok(hz(v))
            } else {
                match f {
                    Freq::Hz(v) => Ok(*v),
                    Freq::Scaled(_) => Err(Error::config(p, format!("knob {knob} takes a plain number"))),
                }
            }
        };
        let start = bound(&mut a.start, "start")?;
        let stop = bound(&mut a.stop, "stop")?;
        let axis = AxisSpec::new(knob, start, stop, a.points).map_err(|e| Error::config(&path, e.to_string()))?;
        axes.push(axis);
    }
    let quantity = match s.quantity {
        Quantity::LogNegativity => {
            require(s.t_low.is_none() && s.t_high.is_none() && s.tol.is_none(), "sweep", || {
                "t_low, t_high and tol apply only to quantity = \"critical_temperature\"".into()
            })?;
            SweepQuantity::LogNegativity
        }
        Quantity::CriticalTemperature => {
            require(axes.len() == 1, "sweep.axes", || "critical_temperature sweeps take one axis".into())?;
            let t_low = s.t_low.ok_or_else(|| Error::config("sweep.t_low", "required for critical_temperature"))?;
            let t_high = s.t_high.ok_or_else(|| Error::config("sweep.t_high", "required for critical_temperature"))?;
            let tol = *s.tol.get_or_insert(DEFAULT_TC_TOL);
            require(tol > 0.0, "sweep.tol", || format!("must be positive, got {tol}"))?;
            SweepQuantity::CriticalTemperature { t_low, t_high, tol }
        }
    };
    Ok(SweepArgs { pair, axes, quantity })
}

fn resolve_tcurve(s: &TcurveSection) -> Result<TcurveArgs> {
    let pair = parse_pair(&s.pair, "tcurve.pair")?;
    let temperatures = match (&s.temperatures, &s.range) {
        (Some(t), None) => t.clone(),
        (None, Some(r)) => {
            let axis = AxisSpec::new(Knob::Temperature, r.start, r.stop, r.points)
                .map_err(|e| Error::config("tcurve.range", e.to_string()))?;
            axis.values()
        }
        _ => return Err(Error::config("tcurve", "give exactly one of temperatures or range")),
    };
    require(!temperatures.is_empty(), "tcurve.temperatures", || "empty".into())?;
    require(temperatures.iter().all(|t| *t >= 0.0), "tcurve.temperatures", || {
        "temperatures must be non-negative".into()
    })?;
    require(temperatures.windows(2).all(|w| w[0] <= w[1]), "tcurve.temperatures", || {
        "temperatures must be ascending".into()
    })?;
    Ok(TcurveArgs { pair, temperatures })
}
