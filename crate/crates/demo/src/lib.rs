//! WebAssembly bindings for the static page in `www/`.
//!
//! Every exported function returns a JSON string; the plain Rust functions
//! behind them are what the tests exercise.

use griesmer_core::bounds::{
    best_bound, best_lower_bound, classify_family, compare_with_griesmer, CodeSize, Setting,
};
use griesmer_core::constructions::{
    levenshtein_19_16_10, simplex_15_gray, systematic_counterexample_34,
};
use griesmer_core::io::{read_code, render_code};
use serde::Serialize;
use serde_json::json;
use wasm_bindgen::prelude::*;

const MAX_CELLS: u64 = 64 * 256;

fn setting(s: &str) -> Result<Setting, String> {
    s.parse::<Setting>().map_err(|e| e.to_string())
}

fn to_json(v: &impl Serialize) -> String {
    serde_json::to_string(v).expect("plain data serializes")
}

/// Grid of best lower bounds: rows `d`, columns `k`.
pub fn table(q: u64, k_max: u32, d_max: u64, setting_name: &str) -> Result<String, String> {
    let setting = setting(setting_name)?;
    if k_max == 0 || d_max == 0 {
        return Err("ranges must be non-empty".into());
    }
    if k_max > 16 || k_max as u64 * d_max > MAX_CELLS {
        return Err(format!("at most 16 columns and {MAX_CELLS} cells"));
    }
    let mut rows = Vec::new();
    for d in 1..=d_max {
        let cells = (1..=k_max)
            .map(|k| {
                let b = best_bound(q, CodeSize::Dimension(k), d, setting).map_err(|e| e.to_string())?;
                let holds = classify_family(q, k, d, setting).map_err(|e| e.to_string())?.holds;
                Ok(json!({ "value": b.value, "source": b.source.letter().to_string(), "griesmer": holds }))
            })
            .collect::<Result<Vec<_>, String>>()?;
        rows.push(json!({ "d": d, "cells": cells }));
    }
    Ok(to_json(&json!({ "q": q, "k_max": k_max, "rows": rows })))
}

/// Every bound plus the family verdict for one `(q, k, d)`.
pub fn inspect(q: u64, k: u32, d: u64, setting_name: &str) -> Result<String, String> {
    let setting = setting(setting_name)?;
    let bounds =
        best_lower_bound(q, CodeSize::Dimension(k), d, setting).map_err(|e| e.to_string())?;
    let family = classify_family(q, k, d, setting).map_err(|e| e.to_string())?;
    let bounds: Vec<_> = bounds
        .into_iter()
        .map(|b| {
            json!({
                "value": b.value,
                "letter": b.source.letter().to_string(),
                "source": b.source.description(),
                "applicable": b.applicable,
                "condition": b.condition,
            })
        })
        .collect();
    Ok(to_json(&json!({ "bounds": bounds, "family": family })))
}

/// Parameters, systematicity (for `k`, or the detected `k` when `k == 0`)
/// and the Griesmer comparison of a code in the text or JSON format.
pub fn verify(text: &str, k: u32) -> Result<String, String> {
    let code = read_code(text).map_err(|e| e.to_string())?;
    let d = code.minimum_distance().map_err(|e| e.to_string())?;
    let k = if k == 0 { code.dimension() } else { Some(k) };
    let systematic = k.map(|k| code.check_systematic(k).to_string());
    let griesmer = k
        .map(|k| compare_with_griesmer(code.n() as u64, code.q() as u64, k, d as u64))
        .transpose()
        .map_err(|e| e.to_string())?;
    Ok(to_json(&json!({
        "q": code.q(),
        "n": code.n(),
        "M": code.len(),
        "d": d,
        "k": k,
        "systematic": systematic,
        "griesmer": griesmer.map(|g| g.1),
        "comparison": griesmer.map(|g| g.0.to_string()),
    })))
}

/// One of the built-in codes in the text format.
pub fn example(name: &str) -> Result<String, String> {
    let code = match name {
        "counterexample-34" => systematic_counterexample_34().into_code(),
        "levenshtein-19-16-10" => levenshtein_19_16_10(),
        "simplex15" => simplex_15_gray().into_code(),
        other => return Err(format!("unknown example `{other}`")),
    };
    Ok(render_code(&code))
}

#[wasm_bindgen(js_name = boundsTable)]
pub fn bounds_table_js(q: u32, k_max: u32, d_max: u32, setting: &str) -> Result<String, JsError> {
    table(q as u64, k_max, d_max as u64, setting).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = inspect)]
pub fn inspect_js(q: u32, k: u32, d: u32, setting: &str) -> Result<String, JsError> {
    inspect(q as u64, k, d as u64, setting).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = verifyCode)]
pub fn verify_js(text: &str, k: u32) -> Result<String, JsError> {
    verify(text, k).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = exampleCode)]
pub fn example_js(name: &str) -> Result<String, JsError> {
    example(name).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn table_cells() {
        let t = parse(table(2, 4, 20, "systematic").unwrap());
        assert_eq!(t["rows"].as_array().unwrap().len(), 20);
        assert_eq!(t["rows"][7]["cells"][3]["value"], 15);
        assert_eq!(
            t["rows"][17]["cells"][3]["griesmer"],
            "disproven-by-example"
        );
        assert!(table(2, 0, 4, "systematic").is_err());
        assert!(table(2, 4, 4, "other").is_err());
    }

    #[test]
    fn inspect_triple() {
        let v = parse(inspect(2, 4, 18, "systematic").unwrap());
        assert_eq!(v["bounds"][0]["value"], 34);
        assert_eq!(v["family"]["holds"], "disproven-by-example");
        assert!(inspect(1, 4, 18, "systematic").is_err());
    }

    #[test]
    fn verify_examples() {
        let v = parse(verify(&example("counterexample-34").unwrap(), 0).unwrap());
        assert_eq!(
            (v["n"].as_u64(), v["d"].as_u64(), v["k"].as_u64()),
            (Some(34), Some(18), Some(4))
        );
        assert_eq!(v["systematic"], "systematic");
        assert_eq!(v["comparison"], "VIOLATES");

        let v = parse(verify(&example("levenshtein-19-16-10").unwrap(), 4).unwrap());
        assert_ne!(v["systematic"], "systematic");
        assert_eq!(v["griesmer"], 20);

        let v = parse(verify(&example("simplex15").unwrap(), 4).unwrap());
        assert_eq!(v["comparison"], "meets");

        assert!(verify("2 3\n000\n", 0).unwrap_err().contains("undefined"));
        assert!(verify("2 3\n000\n01\n", 0)
            .unwrap_err()
            .starts_with("line 3"));
        assert!(example("nope").is_err());
    }
}
