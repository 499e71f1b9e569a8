//! Browser bindings. Every export takes and returns JSON text; failures come
//! back as `{"error": message}` so the page needs no exception handling.

use enriched_ph::io::{analysis_report, grid_to_value, parse_dataset, parse_incarnation};
use enriched_ph::linalg::Fp;
use enriched_ph::persistence::{interleave_upper, ph_grid};
use enriched_ph::rational::format_rational;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn respond(result: enriched_ph::Result<Value>) -> String {
    result.unwrap_or_else(|e| json!({ "error": e.to_string() })).to_string()
}

/// Kind, blocks, a basis and the dimension of an incarnation.
#[wasm_bindgen]
pub fn analyze(incarnation: &str) -> String {
    respond(parse_incarnation(incarnation, false).map(|inc| analysis_report(&inc)))
}

/// Dimension grid of `PH_degree(phi)` over `F_p` on its critical grid.
#[wasm_bindgen]
pub fn persistence(dataset: &str, phi: &str, degree: usize, prime: u32) -> String {
    respond((|| {
        let set = parse_dataset(dataset, false)?;
        let module = ph_grid(&set, set.resolve(phi)?, degree, Fp::new(prime)?)?;
        Ok(grid_to_value(&module, false))
    })())
}

/// Certified interval for the interleaving distance of two measurements.
#[wasm_bindgen]
pub fn interleave(dataset: &str, phi: &str, psi: &str, degree: usize, prime: u32) -> String {
    respond((|| {
        let set = parse_dataset(dataset, false)?;
        let result = interleave_upper(&set, set.resolve(phi)?, set.resolve(psi)?, degree, Fp::new(prime)?)?;
        Ok(json!({
            "upper": format_rational(&result.upper),
            "lower": format_rational(&result.lower),
            "checks": result.checks,
        }))
    })())
}
