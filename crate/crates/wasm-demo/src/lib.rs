//! Browser bindings for three numap operations. The `*_json` functions are
//! plain Rust and are what the tests call; the `#[wasm_bindgen]` wrappers only
//! turn errors into JS exceptions.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use numap::numap::{deviate, extract, numerical_to_strict_rational, parse_spec, spec_oracle};
use numap::{Error, Int};

/// Largest side of the deviation grid, to keep the page responsive.
pub const MAX_GRID: i64 = 41;

fn spec_from(text: &str) -> Result<numap::numap::AnyTable, String> {
    let value: Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    parse_spec(value).map_err(|e| e.to_string())
}

fn show(e: Error) -> String {
    e.to_string()
}

/// Coefficient table of the spec's map up to degree `n`, plus the monomial
/// coefficients over ℚ recovered from it.
pub fn extract_json(spec: &str, n: usize) -> Result<String, String> {
    let spec = spec_from(spec)?;
    let table = extract(&spec_oracle(&spec), n).map_err(show)?;
    let strict = numerical_to_strict_rational(&table);
    Ok(json!({
        "table": serde_json::to_value(&table).map_err(|e| e.to_string())?,
        "monomial": serde_json::to_value(&strict.table).map_err(|e| e.to_string())?,
        "integral": strict.integral,
    })
    .to_string())
}

/// φ(x ◇ y ◇ 1 ◇ ⋯ ◇ 1) with `order` arguments in all, for x, y in [lo, hi]
/// and the first output coordinate. The spec must have one variable.
pub fn deviation_grid_json(spec: &str, order: usize, lo: i64, hi: i64) -> Result<String, String> {
    let spec = spec_from(spec)?;
    if spec.k() != 1 {
        return Err(format!(
            "the grid needs a map of one variable, this one has {}",
            spec.k()
        ));
    }
    if order < 2 {
        return Err("the grid needs at least two arguments".into());
    }
    if lo > hi || hi - lo + 1 > MAX_GRID {
        return Err(format!(
            "range must satisfy lo <= hi and span at most {MAX_GRID} values"
        ));
    }
    let phi = spec_oracle(&spec);
    let axis: Vec<i64> = (lo..=hi).collect();
    let mut rows = Vec::with_capacity(axis.len());
    let mut nonzero = 0usize;
    for &y in &axis {
        let mut row = Vec::with_capacity(axis.len());
        for &x in &axis {
            let mut args = vec![vec![Int::from(x)], vec![Int::from(y)]];
            args.resize(order, vec![Int::from(1)]);
            let v = deviate(&phi, &args).map_err(show)?.swap_remove(0);
            if v != Int::from(0) {
                nonzero += 1;
            }
            row.push(v.to_string());
        }
        rows.push(row);
    }
    Ok(json!({ "axis": axis, "order": order, "rows": rows, "nonzero": nonzero }).to_string())
}

/// The class of the point x in ℤ[t]/J_n.
pub fn chi_json(x: &str, n: usize) -> Result<String, String> {
    let value: Value = serde_json::from_str(x).map_err(|e| e.to_string())?;
    let x = numap::json::int_vec_from_value(&value).map_err(show)?;
    let class = numap::augment::chi_class(&x, n);
    serde_json::to_string(&class).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn extract_table(spec: &str, n: usize) -> Result<String, JsError> {
    extract_json(spec, n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn deviation_grid(spec: &str, order: usize, lo: i64, hi: i64) -> Result<String, JsError> {
    deviation_grid_json(spec, order, lo, hi).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn chi(x: &str, n: usize) -> Result<String, JsError> {
    chi_json(x, n).map_err(|e| JsError::new(&e))
}
