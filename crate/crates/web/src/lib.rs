//! WebAssembly bindings for the browser demo in `www/`.

use erbalg::base::BaseAlgebraSpec;
use erbalg::delannoy;
use erbalg::scalar::{parse_rational, RingContext};
use erbalg::shuffle::{ErbWeight, ShuffleAlgebra};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest `m + n` accepted by [`colored_paths`].
pub const PATH_LIMIT: u32 = 10;

/// Largest row index accepted by [`delannoy_triangle`].
pub const TRIANGLE_LIMIT: usize = 60;

/// Rows `0..=rows` of the triangle of colored Delannoy totals.
pub fn delannoy_triangle(rows: usize) -> Result<String, String> {
    if rows > TRIANGLE_LIMIT {
        return Err(format!("at most {TRIANGLE_LIMIT} rows"));
    }
    Ok(delannoy::render_triangle(&delannoy::triangle(rows)))
}

/// Every colored path to `(m, n)` as a JSON object.
pub fn colored_paths(m: u32, n: u32) -> Result<String, String> {
    let paths = delannoy::enumerate_colored_bounded(m, n, PATH_LIMIT).map_err(|e| e.to_string())?;
    let listed: Vec<serde_json::Value> = paths
        .iter()
        .map(|p| json!({ "steps": p.to_string(), "diagonals": p.diagonals() }))
        .collect();
    let value = json!({
        "m": m,
        "n": n,
        "total": delannoy::e_total(m, n).to_string(),
        "paths": listed,
    });
    Ok(value.to_string())
}

/// The product of `1^(m+1)` and `1^(n+1)` at rational `lambda`, `kappa`.
/// Empty strings keep the weight symbolic.
pub fn quasi_shuffle_kk(m: usize, n: usize, lambda: &str, kappa: &str) -> Result<String, String> {
    if m + n > 40 {
        return Err("m + n must be at most 40".into());
    }
    let ctx = RingContext::weight_ring();
    let weight = match (lambda.trim(), kappa.trim()) {
        ("", "") => ErbWeight::symbolic(&ctx).map_err(|e| e.to_string())?,
        (l, k) => {
            let l = parse_rational(l).map_err(|e| e.to_string())?;
            let k = parse_rational(k).map_err(|e| e.to_string())?;
            ErbWeight::constant(&ctx, l, k)
        }
    };
    let alg = ShuffleAlgebra::new(BaseAlgebraSpec::scalars(), weight);
    let product = alg.closed_form_kk(m, n).map_err(|e| e.to_string())?;
    Ok(alg.render(&product))
}

#[wasm_bindgen(js_name = delannoyTriangle)]
pub fn delannoy_triangle_js(rows: usize) -> Result<String, JsError> {
    delannoy_triangle(rows).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = coloredPaths)]
pub fn colored_paths_js(m: u32, n: u32) -> Result<String, JsError> {
    colored_paths(m, n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = quasiShuffle)]
pub fn quasi_shuffle_js(m: usize, n: usize, lambda: &str, kappa: &str) -> Result<String, JsError> {
    quasi_shuffle_kk(m, n, lambda, kappa).map_err(|e| JsError::new(&e))
}
