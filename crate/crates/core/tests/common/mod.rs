#![allow(dead_code)]

use magnomech::config::{load_preset, parse_config};
use magnomech::SystemParams;

pub fn baseline() -> SystemParams {
    load_preset("fig2_baseline").unwrap().params
}

/// Baseline with dotted-path overrides (`system.g_2`, `system.drive.g_eff`, ...) in Hz and K.
pub fn with_overrides(overrides: &serde_json::Map<String, serde_json::Value>) -> SystemParams {
    let mut root = toml::Table::new();
    for (key, value) in overrides {
        let mut parts: Vec<&str> = key.split('.').collect();
        let leaf = parts.pop().unwrap();
        let mut table = &mut root;
        for p in parts {
            table = table
                .entry(p)
                .or_insert_with(|| toml::Value::Table(toml::Table::new()))
                .as_table_mut()
                .unwrap();
        }
        table.insert(leaf.to_string(), toml::Value::Float(value.as_f64().unwrap()));
    }
    parse_config(&toml::to_string(&root).unwrap(), Some("fig2_baseline"))
        .unwrap()
        .params
}
