//! Browser bindings. Every export returns a JSON string; the plain
//! functions behind them are usable and tested natively.

use flatband::model::{ModelParams, Parity, Regime};
use flatband::spectrum::{find_all, CriticalStrength, SearchConfig};
use flatband::wavefunction::{Eigenfunction, WaveSample};
use serde::Serialize;
use wasm_bindgen::prelude::*;

fn regime(name: &str) -> Result<Regime, String> {
    Regime::ALL
        .into_iter()
        .find(|r| r.short_name() == name)
        .ok_or_else(|| format!("unknown regime `{name}` (neg, interval, whole)"))
}

fn parities(name: &str) -> Result<Vec<Parity>, String> {
    match name {
        "odd" => Ok(vec![Parity::Odd]),
        "even" => Ok(vec![Parity::Even]),
        "both" => Ok(Parity::BOTH.to_vec()),
        _ => Err(format!("unknown parity `{name}` (odd, even, both)")),
    }
}

#[derive(Serialize)]
struct Level {
    n: u32,
    parity: String,
    energy: f64,
    wkb_energy: Option<f64>,
    residual: f64,
}

#[derive(Serialize)]
struct Spectrum {
    alpha: f64,
    regime: String,
    levels: Vec<Level>,
    warnings: Vec<String>,
}

/// Exact and WKB levels at one strength (m = 1).
pub fn spectrum(alpha: f64, regime_name: &str, parity: &str, n_max: u32) -> Result<String, String> {
    let regime = regime(regime_name)?;
    let p = ModelParams::new(1.0, alpha).map_err(|e| e.to_string())?;
    let cfg = SearchConfig { n_max: n_max.clamp(1, 40), threads: 1, ..SearchConfig::default() };
    let report = find_all(&p, regime, &parities(parity)?, &cfg).map_err(|e| e.to_string())?;
    let levels = report
        .states
        .iter()
        .map(|s| Level {
            n: s.state.n,
            parity: s.state.parity.to_string(),
            energy: s.state.energy,
            wkb_energy: s.wkb_energy,
            residual: s.residual,
        })
        .collect();
    let out = Spectrum { alpha, regime: regime_name.into(), levels, warnings: report.warnings };
    serde_json::to_string(&out).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct CriticalRow {
    regime: String,
    parity: String,
    k: u32,
    exact: f64,
    asymptotic: f64,
    rel_diff: f64,
}

/// Critical strengths of both α/E > 0 regimes for k = 1..=k_max.
pub fn critical_table(k_max: u32) -> Result<String, String> {
    let mut rows = Vec::new();
    for regime in [Regime::PosRatioInterval, Regime::PosRatioWholeSpace] {
        for parity in Parity::BOTH {
            for k in 1..=k_max.clamp(1, 30) {
                let c = CriticalStrength::new(regime, parity, k).map_err(|e| e.to_string())?;
                rows.push(CriticalRow {
                    regime: regime.short_name().into(),
                    parity: parity.to_string(),
                    k,
                    exact: c.alpha_c_exact,
                    asymptotic: c.alpha_c_asymptotic,
                    rel_diff: c.rel_diff(),
                });
            }
        }
    }
    serde_json::to_string(&rows).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct Wavefunction {
    alpha: f64,
    energy: f64,
    x0: f64,
    samples: Vec<WaveSample>,
}

/// Level n of a sector placed at energy E by solving for α (m = 1).
pub fn wavefunction(energy: f64, regime_name: &str, parity: &str, n: u32, points: usize) -> Result<String, String> {
    let parity = match parities(parity)?.as_slice() {
        [p] => *p,
        _ => return Err("choose odd or even".into()),
    };
    let f = Eigenfunction::at_energy(1.0, regime(regime_name)?, parity, n.max(1), energy).map_err(|e| e.to_string())?;
    let samples = f.samples(points.clamp(10, 2000)).map_err(|e| e.to_string())?;
    let out = Wavefunction { alpha: f.params.alpha, energy: f.energy, x0: f.x0(), samples };
    serde_json::to_string(&out).map_err(|e| e.to_string())
}

#[wasm_bindgen(js_name = spectrum)]
pub fn spectrum_js(alpha: f64, regime: &str, parity: &str, n_max: u32) -> Result<String, JsValue> {
    spectrum(alpha, regime, parity, n_max).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = criticalTable)]
pub fn critical_table_js(k_max: u32) -> Result<String, JsValue> {
    critical_table(k_max).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = wavefunction)]
pub fn wavefunction_js(energy: f64, regime: &str, parity: &str, n: u32, points: usize) -> Result<String, JsValue> {
    wavefunction(energy, regime, parity, n, points).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    #[test]
    fn spectrum_json() {
        let v: Value = serde_json::from_str(&spectrum(-1.0, "neg", "odd", 3).unwrap()).unwrap();
        let levels = v["levels"].as_array().unwrap();
        assert_eq!(levels.len(), 3);
        assert!((levels[0]["energy"].as_f64().unwrap() - 0.7430867336492227).abs() < 1e-12);
        assert!(spectrum(-1.0, "sideways", "odd", 3).is_err());
        assert!(spectrum(1.0, "neg", "odd", 3).is_err());
    }

    #[test]
    fn critical_json() {
        let v: Value = serde_json::from_str(&critical_table(2).unwrap()).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 8);
        assert!((v[0]["exact"].as_f64().unwrap() - 1.9158529851037562).abs() < 1e-11);
    }

    #[test]
    fn wavefunction_json() {
        let v: Value = serde_json::from_str(&wavefunction(0.5, "whole", "odd", 1, 50).unwrap()).unwrap();
        assert_eq!(v["samples"].as_array().unwrap().len(), 100);
        assert!(wavefunction(0.5, "whole", "both", 1, 50).is_err());
    }
}
