//! Frozen E_N values at the operating points in fixtures/regression.json.

mod common;

use std::path::PathBuf;

use magnomech::dynamics::{build_diffusion, build_drift};
use magnomech::lyapunov::{default_step, integrate_to_steady, solve_steady};
use magnomech::entanglement::all_bipartite;
use magnomech::lyapunov::CovarianceMatrix;
use magnomech::{steady_covariance, PhysicalConstants, SystemParams};
use serde_json::Value;

const REGRESSION_TOL: f64 = 1e-9;
const ORACLE_TOL: f64 = 1e-6;

fn fixture_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/regression.json")
}

fn load() -> Value {
    serde_json::from_str(&std::fs::read_to_string(fixture_path()).unwrap()).unwrap()
}

fn params(point: &Value) -> SystemParams {
    common::with_overrides(point["overrides"].as_object().unwrap())
}

fn all_pairs_log_negativity(cm: &CovarianceMatrix) -> Vec<(String, f64)> {
    all_bipartite(cm)
        .unwrap()
        .into_iter()
        .map(|e| (e.pair.to_string(), e.log_negativity))
        .collect()
}

fn compute(p: &SystemParams) -> Vec<(String, f64)> {
    all_pairs_log_negativity(&steady_covariance(p, &PhysicalConstants::default()).unwrap())
}

#[test]
fn log_negativities_match_frozen_values() {
    let doc = load();
    for point in doc["points"].as_array().unwrap() {
        let name = point["name"].as_str().unwrap();
        let frozen = point["value"].as_object().unwrap_or_else(|| panic!("{name}: no frozen values"));
        for (pair, e) in compute(&params(point)) {
            let want = frozen[&pair].as_f64().unwrap();
            assert!((e - want).abs() <= REGRESSION_TOL, "{name} {pair}: {e} vs frozen {want}");
        }
    }
}

#[test]
fn frozen_values_agree_with_independent_reference() {
    let doc = load();
    for point in doc["points"].as_array().unwrap() {
        let name = point["name"].as_str().unwrap();
        for (pair, frozen) in point["value"].as_object().unwrap() {
            let scipy = point["scipy"][pair].as_f64().unwrap();
            let frozen = frozen.as_f64().unwrap();
            assert!((frozen - scipy).abs() <= REGRESSION_TOL, "{name} {pair}: {frozen} vs scipy {scipy}");
        }
    }
}

#[test]
fn second_magnon_takes_over_cavity_entanglement() {
    let doc = load();
    let frozen = |name: &str, pair: &str| {
        doc["points"]
            .as_array()
            .unwrap()
            .iter()
            .find(|p| p["name"] == name)
            .unwrap()["value"][pair]
            .as_f64()
            .unwrap()
    };
    assert!(frozen("no_second_magnon", "m1-m2") == 0.0);
    assert!(frozen("resonant_detunings", "m1-m2") > 0.0);
    assert!(frozen("resonant_detunings", "a-m1") < frozen("no_second_magnon", "a-m1"));
}

/// Recomputes `value` for every point after checking both oracles, and rewrites the fixture.
#[test]
#[ignore]
fn regenerate() {
    let c = PhysicalConstants::default();
    let mut doc = load();
    for point in doc["points"].as_array_mut().unwrap() {
        let p = params(point);
        let name = point["name"].as_str().unwrap().to_string();
        let amps = magnomech::steady::solve(&p, &c).unwrap();
        let drift = build_drift(&p, &amps);
        let diffusion = build_diffusion(&p, &c).unwrap();
        let direct = solve_steady(&drift, &diffusion).unwrap();
        let slowest = magnomech::check_stability(&drift).unwrap().max_re_eig.abs();
        let rk4 = integrate_to_steady(&drift, &diffusion, 50.0 / slowest, default_step(&drift)).unwrap();
        let gap = (direct.matrix() - rk4.matrix()).amax();
        assert!(gap < ORACLE_TOL, "{name}: oracles differ by {gap}");

        let mut value = serde_json::Map::new();
        for (pair, e) in all_pairs_log_negativity(&direct) {
            let scipy = point["scipy"][&pair].as_f64().unwrap();
            assert!((e - scipy).abs() <= REGRESSION_TOL, "{name} {pair}: {e} vs scipy {scipy}");
            value.insert(pair, e.into());
        }
        point["value"] = Value::Object(value);
    }
    let mut text = serde_json::to_string_pretty(&doc).unwrap();
    text.push('\n');
    std::fs::write(fixture_path(), text).unwrap();
}
