//! Command dispatch and JSON / CSV serialization of results.
//!
//! Dimensional output fields carry their unit in the key: `_hz` for
//! ordinary frequencies ω/2π, `_rad_s` for angular rates, `_k` for kelvin.
//! Numbers are rounded to 12 significant digits; unstable or undefined
//! values are `null` in JSON and `nan` in CSV.

use std::io::Write;
use std::path::{Path, PathBuf};

use nalgebra::Complex;
use serde_json::{json, Map, Value};

use crate::config::{to_hz, CommandKind, Format, RunConfig, SweepQuantity};
use crate::dynamics::{build_drift, StabilityResult};
use crate::error::{Error, Result};
use crate::mode::ModePair;
use crate::pipeline::{amplitudes_or_undetermined, evaluate_point, PointReport};
use crate::steady::ModeAmplitudes;
use crate::sweep::{critical_temperature, critical_temperature_curve, sweep, temperature_curve, AxisSpec, Knob, SweepResult};
use crate::validity::{audit_validity, ValidityReport};

pub const TOOL: &str = env!("CARGO_PKG_NAME");
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// What a command produced.
#[derive(Debug, Clone)]
pub enum Outcome {
    Point(Box<PointReport>),
    Audit(Box<ValidityReport>),
    Sweep { result: SweepResult, quantity: SweepQuantity },
    Tcurve { pair: ModePair, temperatures: Vec<f64>, values: Vec<f64> },
    Tcrit { pair: ModePair, t_low: f64, t_high: f64, tol: f64, critical_temperature: f64 },
}

fn section_missing(command: CommandKind) -> Error {
    Error::config(command.name(), format!("command `{command}` needs a [{command}] section"))
}

/// Picks the command: an explicit request wins over the config's `command`.
pub fn resolve_command(cfg: &RunConfig, requested: Option<CommandKind>) -> Result<CommandKind> {
    requested
        .or(cfg.command)
        .ok_or_else(|| Error::config("command", "no command given"))
}

pub fn run(cfg: &RunConfig, command: CommandKind) -> Result<Outcome> {
    let (p, c) = (&cfg.params, &cfg.constants);
    Ok(match command {
        CommandKind::Point => Outcome::Point(Box::new(evaluate_point(p, c, cfg.thresholds)?)),
        CommandKind::Audit => {
            p.validate()?;
            let amps = amplitudes_or_undetermined(p, c)?;
            let drift = build_drift(p, &amps);
            Outcome::Audit(Box::new(audit_validity(p, &amps, &drift, c, cfg.thresholds)))
        }
        CommandKind::Sweep => {
            let args = cfg.sweep.as_ref().ok_or_else(|| section_missing(command))?;
            let result = match args.quantity {
                SweepQuantity::LogNegativity => sweep(p, c, &args.axes, args.pair, cfg.thresholds)?,
                SweepQuantity::CriticalTemperature { t_low, t_high, tol } => {
                    critical_temperature_curve(p, c, &args.axes[0], args.pair, t_low, t_high, tol)?
                }
            };
            Outcome::Sweep { result, quantity: args.quantity.clone() }
        }
        CommandKind::Tcurve => {
            let args = cfg.tcurve.as_ref().ok_or_else(|| section_missing(command))?;
            let values = temperature_curve(p, c, &args.temperatures, args.pair)?;
            Outcome::Tcurve { pair: args.pair, temperatures: args.temperatures.clone(), values }
        }
        CommandKind::Tcrit => {
            let a = cfg.tcrit.as_ref().ok_or_else(|| section_missing(command))?;
            let tc = critical_temperature(p, c, a.pair, a.t_low, a.t_high, a.tol)?;
            Outcome::Tcrit { pair: a.pair, t_low: a.t_low, t_high: a.t_high, tol: a.tol, critical_temperature: tc }
        }
    })
}

impl Outcome {
    pub fn command(&self) -> CommandKind {
        match self {
            Outcome::Point(_) => CommandKind::Point,
            Outcome::Audit(_) => CommandKind::Audit,
            Outcome::Sweep { .. } => CommandKind::Sweep,
            Outcome::Tcurve { .. } => CommandKind::Tcurve,
            Outcome::Tcrit { .. } => CommandKind::Tcrit,
        }
    }
}

/// Rounds to 12 significant digits; non-finite values pass through.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        x
    } else {
        format!("{x:.11e}").parse().expect("formatted float parses")
    }
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) => {
            if let Some(x) = n.as_f64().filter(|_| n.is_f64()) {
                *v = json!(round_sig(x));
            }
        }
        Value::Array(a) => a.iter_mut().for_each(round_value),
        Value::Object(o) => o.values_mut().for_each(round_value),
        _ => {}
    }
}

/// CSV cell for a number: 12 significant digits, `nan` for non-finite.
pub fn format_number(x: f64) -> String {
    if !x.is_finite() {
        return "nan".into();
    }
    let r = round_sig(x);
    if r == 0.0 || (1e-4..1e15).contains(&r.abs()) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

fn complex(z: Complex<f64>) -> Value {
    json!([z.re, z.im])
}

fn amplitudes_json(a: &ModeAmplitudes) -> Value {
    let (ga, gm1, gm2) = a.gauged();
    json!({
        "a": complex(a.a_avg),
        "m1": complex(a.m1_avg),
        "m2": complex(a.m2_avg),
        "q": a.q_avg,
        "p": a.p_avg,
        "gauged": { "a": complex(ga), "m1": complex(gm1), "m2": complex(gm2) },
        "gauge_phase": a.gauge_phase,
        "delta_1_tilde_hz": to_hz(a.delta_1_tilde),
        "g_eff_hz": to_hz(a.g_eff),
        "rabi_hz": to_hz(a.rabi),
        "bistable": a.bistable,
    })
}

fn stability_json(s: &StabilityResult) -> Value {
    json!({
        "stable": s.stable,
        "max_re_eig_hz": to_hz(s.max_re_eig),
        "eigenvalues_hz": s.eigenvalues.iter().map(|z| json!([to_hz(z.re), to_hz(z.im)])).collect::<Vec<_>>(),
    })
}

fn validity_json(v: &ValidityReport) -> Value {
    json!({
        "valid": v.is_valid(),
        "magnon_number_1": v.magnon_number_1,
        "magnon_number_2": v.magnon_number_2,
        "spin_capacity": v.spin_capacity,
        "excitation_ratio_1": v.excitation_ratio_1,
        "excitation_ratio_2": v.excitation_ratio_2,
        "kerr_shift_rad_s": v.kerr_shift,
        "rabi_rad_s": v.rabi,
        "kerr_ratio": v.kerr_ratio,
        "markov_q": v.markov_q,
        "stable": v.stable,
        "max_re_eig_hz": to_hz(v.max_re_eig),
        "thresholds": { "excitation": v.thresholds.excitation, "kerr": v.thresholds.kerr, "min_q": v.thresholds.min_q },
        "violations": v.violations,
    })
}

/// Label of an axis in external units.
pub fn axis_label(knob: &Knob) -> String {
    match knob {
        Knob::Temperature => "temperature_k".into(),
        k if k.is_frequency() => format!("{}_hz", k.name()),
        k => k.name().into(),
    }
}

/// Axis value in external units.
pub fn external_value(knob: &Knob, v: f64) -> f64 {
    if knob.is_frequency() {
        to_hz(v)
    } else {
        v
    }
}

fn axis_json(a: &AxisSpec) -> Value {
    let mut m = Map::new();
    m.insert("knob".into(), json!(a.knob.name()));
    m.insert("label".into(), json!(axis_label(&a.knob)));
    if let Knob::KappaMagnon { cavity_ratio: Some(r) } = a.knob {
        m.insert("cavity_ratio".into(), json!(r));
    }
    m.insert("points".into(), json!(a.points));
    m.insert(
        "values".into(),
        json!(a.values().iter().map(|v| external_value(&a.knob, *v)).collect::<Vec<_>>()),
    );
    Value::Object(m)
}

/// Nested arrays with the first axis outermost.
fn grid<T: Clone + Into<Value>>(shape: &[usize], flat: &[T]) -> Value {
    match shape {
        [_] => Value::Array(flat.iter().cloned().map(Into::into).collect()),
        [_, m] => Value::Array(flat.chunks(*m).map(|row| grid(&shape[1..], row)).collect()),
        _ => unreachable!("sweeps have one or two axes"),
    }
}

fn quantity_name(q: &SweepQuantity) -> &'static str {
    match q {
        SweepQuantity::LogNegativity => "log_negativity",
        SweepQuantity::CriticalTemperature { .. } => "critical_temperature_k",
    }
}

fn result_json(o: &Outcome) -> Value {
    match o {
        Outcome::Point(r) => json!({
            "amplitudes": amplitudes_json(&r.amplitudes),
            "stability": stability_json(&r.stability),
            "entanglement": r.entanglement.iter().map(|e| json!({
                "pair": e.pair.to_string(),
                "nu_minus": e.nu_minus,
                "log_negativity": e.log_negativity,
                "entangled": e.entangled,
            })).collect::<Vec<_>>(),
            "validity": validity_json(&r.validity),
            "warnings": r.warnings,
        }),
        Outcome::Audit(v) => validity_json(v),
        Outcome::Sweep { result, quantity } => {
            let shape = result.shape();
            let values: Vec<Value> = result.values.iter().map(|v| json!(v)).collect();
            let status: Vec<Value> = result.status.iter().map(|s| json!(s)).collect();
            let mut m = Map::new();
            m.insert("pair".into(), json!(result.pair.to_string()));
            m.insert("quantity".into(), json!(quantity_name(quantity)));
            if let SweepQuantity::CriticalTemperature { t_low, t_high, tol } = quantity {
                m.insert("bracket_k".into(), json!([t_low, t_high]));
                m.insert("tol_k".into(), json!(tol));
            }
            m.insert("axes".into(), json!(result.axes.iter().map(axis_json).collect::<Vec<_>>()));
            m.insert("values".into(), grid(&shape, &values));
            m.insert("status".into(), grid(&shape, &status));
            m.insert("valid".into(), grid(&shape, &result.validity));
            Value::Object(m)
        }
        Outcome::Tcurve { pair, temperatures, values } => json!({
            "pair": pair.to_string(),
            "temperature_k": temperatures,
            "log_negativity": values,
        }),
        Outcome::Tcrit { pair, t_low, t_high, tol, critical_temperature } => json!({
            "pair": pair.to_string(),
            "bracket_k": [t_low, t_high],
            "tol_k": tol,
            "critical_temperature_k": critical_temperature,
        }),
    }
}

/// Complete JSON document, including the resolved configuration.
pub fn to_json(cfg: &RunConfig, outcome: &Outcome) -> Result<Value> {
    let config = serde_json::to_value(&cfg.resolved).map_err(|e| Error::Numerical(e.to_string()))?;
    let mut doc = json!({
        "tool": TOOL,
        "version": VERSION,
        "command": outcome.command().name(),
        "config": config,
        "result": result_json(outcome),
    });
    round_value(&mut doc);
    Ok(doc)
}

/// Machine-readable record of a failed run.
pub fn error_json(command: Option<CommandKind>, err: &Error) -> Value {
    let mut e = json!({ "kind": err.kind(), "message": err.to_string() });
    if let Error::Config { path, .. } = err {
        e["path"] = json!(path);
    }
    if let Error::Unstable { max_re_eig } = err {
        e["max_re_eig_hz"] = json!(round_sig(to_hz(*max_re_eig)));
    }
    json!({
        "tool": TOOL,
        "version": VERSION,
        "command": command.map(|c| c.name()),
        "error": e,
    })
}

fn csv_err(e: impl std::fmt::Display) -> Error {
    Error::Numerical(format!("csv output: {e}"))
}

pub fn to_csv(outcome: &Outcome) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let f = format_number;
    match outcome {
        Outcome::Point(r) => {
            w.write_record(["pair", "nu_minus", "log_negativity", "entangled"]).map_err(csv_err)?;
            for pair in ModePair::all() {
                let (nu, en, ent) = match r.pair(pair) {
                    Some(e) => (e.nu_minus, e.log_negativity, e.entangled),
                    None => (f64::NAN, f64::NAN, false),
                };
                w.write_record([pair.to_string(), f(nu), f(en), ent.to_string()]).map_err(csv_err)?;
            }
        }
        Outcome::Audit(v) => {
            w.write_record(["quantity", "value"]).map_err(csv_err)?;
            for (k, x) in [
                ("magnon_number_1", v.magnon_number_1),
                ("magnon_number_2", v.magnon_number_2),
                ("spin_capacity", v.spin_capacity),
                ("excitation_ratio_1", v.excitation_ratio_1),
                ("excitation_ratio_2", v.excitation_ratio_2),
                ("kerr_shift_rad_s", v.kerr_shift),
                ("rabi_rad_s", v.rabi),
                ("kerr_ratio", v.kerr_ratio),
                ("markov_q", v.markov_q),
                ("max_re_eig_hz", to_hz(v.max_re_eig)),
            ] {
                w.write_record([k.to_string(), f(x)]).map_err(csv_err)?;
            }
            w.write_record(["stable".to_string(), v.stable.to_string()]).map_err(csv_err)?;
            w.write_record(["valid".to_string(), v.is_valid().to_string()]).map_err(csv_err)?;
        }
        Outcome::Sweep { result, quantity } => match result.axes.as_slice() {
            [x] => {
                w.write_record([axis_label(&x.knob), quantity_name(quantity).to_string()]).map_err(csv_err)?;
                for (i, v) in x.values().iter().enumerate() {
                    w.write_record([f(external_value(&x.knob, *v)), f(result.values[i])]).map_err(csv_err)?;
                }
            }
            [x, y] => {
                let mut header = vec![format!("{}\\{}", axis_label(&x.knob), axis_label(&y.knob))];
                header.extend(y.values().iter().map(|v| f(external_value(&y.knob, *v))));
                w.write_record(&header).map_err(csv_err)?;
                for (i, xv) in x.values().iter().enumerate() {
                    let mut row = vec![f(external_value(&x.knob, *xv))];
                    row.extend((0..y.points).map(|j| f(result.get(&[i, j]))));
                    w.write_record(&row).map_err(csv_err)?;
                }
            }
            _ => unreachable!("sweeps have one or two axes"),
        },
        Outcome::Tcurve { temperatures, values, .. } => {
            w.write_record(["temperature_k", "log_negativity"]).map_err(csv_err)?;
            for (t, v) in temperatures.iter().zip(values) {
                w.write_record([f(*t), f(*v)]).map_err(csv_err)?;
            }
        }
        Outcome::Tcrit { t_low, t_high, tol, critical_temperature, .. } => {
            w.write_record(["t_low_k", "t_high_k", "tol_k", "critical_temperature_k"]).map_err(csv_err)?;
            w.write_record([f(*t_low), f(*t_high), f(*tol), f(*critical_temperature)]).map_err(csv_err)?;
        }
    }
    let bytes = w.into_inner().map_err(csv_err)?;
    String::from_utf8(bytes).map_err(csv_err)
}

/// Path of the provenance sidecar written next to a CSV file.
pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".resolved.toml");
    PathBuf::from(s)
}

/// Serializes `outcome` in `format` to `out`, or to stdout when `out` is
/// `None`. CSV files get a `<out>.resolved.toml` sidecar with the resolved
/// configuration.
pub fn emit(cfg: &RunConfig, outcome: &Outcome, format: Format, out: Option<&Path>) -> Result<()> {
    let body = match format {
        Format::Json => {
            let doc = to_json(cfg, outcome)?;
            let mut s = serde_json::to_string_pretty(&doc).map_err(|e| Error::Numerical(e.to_string()))?;
            s.push('\n');
            s
        }
        Format::Csv => to_csv(outcome)?,
    };
    match out {
        Some(path) => {
            std::fs::write(path, body)?;
            if format == Format::Csv {
                std::fs::write(sidecar_path(path), cfg.resolved_toml()?)?;
            }
        }
        None => std::io::stdout().lock().write_all(body.as_bytes())?,
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{load_preset, parse_config};

    #[test]
    fn rounding_keeps_twelve_digits() {
        assert_eq!(round_sig(0.123456789012345), 0.123456789012);
        assert_eq!(round_sig(-7.1234567890129e14), -7.12345678901e14);
        assert_eq!(format_number(f64::NAN), "nan");
        assert_eq!(format_number(0.25), "0.25");
        assert_eq!(format_number(1.6e-21), "1.6e-21");
        assert_eq!(format_number(-18849555.9215), "-18849555.9215");
    }

    #[test]
    fn point_outputs() {
        let cfg = load_preset("fig2_baseline").unwrap();
        let o = run(&cfg, CommandKind::Point).unwrap();
        let doc = to_json(&cfg, &o).unwrap();
        assert_eq!(doc["command"], "point");
        assert_eq!(doc["result"]["stability"]["stable"], true);
        assert_eq!(doc["result"]["validity"]["valid"], true);
        assert_eq!(doc["config"]["system"]["delta_a"].as_f64().unwrap(), -0.9 * 10e6);
        let csv = to_csv(&o).unwrap();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "pair,nu_minus,log_negativity,entangled");
        assert_eq!(lines.len(), 7);
        assert!(csv.contains("m1-m2,"));
    }

    #[test]
    fn sweep_csv_has_axis_headers() {
        let text = r#"
            [sweep]
            pair = "m1-m2"
            [[sweep.axes]]
            knob = "delta_a"
            start = "-1.2 omega_b"
            stop = "-0.6 omega_b"
            points = 3
            [[sweep.axes]]
            knob = "g_over_g1"
            start = 1.0
            stop = 20.0
            points = 2
        "#;
        let cfg = parse_config(text, Some("fig2_baseline")).unwrap();
        let o = run(&cfg, CommandKind::Sweep).unwrap();
        let csv = to_csv(&o).unwrap();
        let rows: Vec<Vec<&str>> = csv.lines().map(|l| l.split(',').collect()).collect();
        assert_eq!(rows[0], ["delta_a_hz\\g_over_g1", "1", "20"]);
        assert_eq!(rows[1][0], "-12000000");
        assert_eq!(rows[3][0], "-6000000");
        // the strongest coupling is unstable everywhere on this axis
        assert!(rows[1..].iter().all(|r| r[2] == "nan"));
        assert!(rows[1..].iter().all(|r| r[1].parse::<f64>().unwrap() >= 0.0));

        let doc = to_json(&cfg, &o).unwrap();
        assert!(doc["result"]["values"][0][1].is_null());
        assert_eq!(doc["result"]["status"][0][1], "unstable");
    }

    #[test]
    fn missing_section_is_a_config_error() {
        let cfg = load_preset("fig2_baseline").unwrap();
        assert!(matches!(run(&cfg, CommandKind::Tcrit), Err(Error::Config { .. })));
    }

    #[test]
    fn error_record_shape() {
        let e = Error::Bracket("t_high is still entangled".into());
        let v = error_json(Some(CommandKind::Tcrit), &e);
        assert_eq!(v["error"]["kind"], "bracket");
        assert_eq!(v["command"], "tcrit");
    }

    #[test]
    fn sidecar_name() {
        assert_eq!(sidecar_path(Path::new("out/grid.csv")), PathBuf::from("out/grid.csv.resolved.toml"));
    }
}
