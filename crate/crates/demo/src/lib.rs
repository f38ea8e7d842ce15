//! Browser bindings for the annulus tables. Every export returns a JSON
//! string; the plain functions underneath are what the native tests call.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use webtrace_core::algebra::{format_rational, rational_to_f64};
use webtrace_core::annulus::{
    crossing_exponent, crossing_exponent_oracle, crossing_table, exact_mean, mean_curve, pgf,
};

/// Rows `(j, k, probability)` of the crossing generating function plus the
/// exact mean.
pub fn pgf_json(m: usize, height: usize) -> Result<String, String> {
    let p = pgf(m, height).map_err(|e| e.to_string())?;
    let rows: Vec<Value> = crossing_table(&p)
        .iter()
        .map(|(j, k, c)| {
            json!({"j": j, "k": k, "exact": format_rational(c), "value": rational_to_f64(c)})
        })
        .collect();
    let mean = exact_mean(m, height).map_err(|e| e.to_string())?;
    Ok(json!({
        "m": m,
        "height": height,
        "rows": rows,
        "mean": format_rational(&mean),
        "mean_value": rational_to_f64(&mean),
    })
    .to_string())
}

pub fn mean_curve_json(tau_min: f64, tau_max: f64, points: usize) -> String {
    let pts: Vec<[f64; 2]> = mean_curve(tau_min, tau_max, points, 64)
        .into_iter()
        .map(|(t, y)| [t, y])
        .collect();
    json!(pts).to_string()
}

pub fn exponent_table_json(max: u32) -> String {
    let rows: Vec<Value> = (0..=max)
        .flat_map(|j| (0..=max).map(move |k| (j, k)))
        .map(|(j, k)| {
            let f = crossing_exponent(j as u64, k as u64);
            // The exhaustive check grows like 3^(j+k); keep it to small cases.
            let oracle = (j + k <= 8).then(|| crossing_exponent_oracle(j as usize, k as usize));
            json!({"j": j, "k": k, "exponent": f, "oracle": oracle})
        })
        .collect();
    json!(rows).to_string()
}

#[wasm_bindgen]
pub fn annulus_pgf(m: u32, height: u32) -> Result<String, JsError> {
    pgf_json(m as usize, height as usize).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn mean_vs_tau(tau_min: f64, tau_max: f64, points: u32) -> String {
    mean_curve_json(tau_min, tau_max, points as usize)
}

#[wasm_bindgen]
pub fn exponent_table(max: u32) -> String {
    exponent_table_json(max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pgf_rows() {
        let v: Value = serde_json::from_str(&pgf_json(1, 2).unwrap()).unwrap();
        assert_eq!(v["rows"].as_array().unwrap().len(), 6);
        assert_eq!(v["mean"], "3/5");
        assert!(pgf_json(2, 2).is_err());
    }

    #[test]
    fn curve_is_decreasing() {
        let v: Vec<[f64; 2]> = serde_json::from_str(&mean_curve_json(0.2, 2.0, 10)).unwrap();
        assert_eq!(v.len(), 10);
        assert!(v.windows(2).all(|w| w[1][1] < w[0][1]));
    }

    #[test]
    fn exponents_agree() {
        let v: Vec<Value> = serde_json::from_str(&exponent_table_json(4)).unwrap();
        assert_eq!(v.len(), 25);
        for r in &v {
            assert_eq!(r["exponent"], r["oracle"]);
        }
    }
}
