//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Each export has a plain Rust twin returning `Result<String, String>` so
//! that the logic is testable natively; the `#[wasm_bindgen]` wrappers only
//! convert errors into JS exceptions.

use irrhodge::character::weyl_dimension;
use irrhodge::chevalley::{adjoint_rep, classical_std_rep, jordan_type, principal_triple};
use irrhodge::connection::{check_flatness, rmodule_pair};
use irrhodge::grading::hodge_numbers;
use irrhodge::kkp::{kkp_check, minuscule_nodes, MinusculeCase};
use irrhodge::rootdatum::{RootDatum, SimpleType, Weight};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Keeps a browser tab responsive.
pub const MAX_DIM: u64 = 20_000;

fn dim_ok(datum: &RootDatum, lambda: &Weight) -> Result<(), String> {
    let dim = weyl_dimension(datum, lambda).map_err(|e| e.to_string())?;
    if dim > MAX_DIM.into() {
        return Err(format!("dim {dim} is over the demo limit of {MAX_DIM}"));
    }
    Ok(())
}

fn datum(ty: &str) -> Result<RootDatum, String> {
    let ty: SimpleType = ty
        .trim()
        .parse()
        .map_err(|e: irrhodge::Error| e.to_string())?;
    RootDatum::new(ty).map_err(|e| e.to_string())
}

/// Hodge table of `V_lambda` as JSON.
pub fn hodge_table_json(ty: &str, weight: &str) -> Result<String, String> {
    let d = datum(ty)?;
    let lambda = Weight::parse(weight.trim()).map_err(|e| e.to_string())?;
    if lambda.rank() != d.rank() {
        return Err(format!(
            "{} needs {} coordinates",
            d.simple_type(),
            d.rank()
        ));
    }
    if !lambda.is_dominant() {
        return Err(format!("{lambda} is not dominant"));
    }
    dim_ok(&d, &lambda)?;
    let table = hodge_numbers(&d, &lambda).map_err(|e| e.to_string())?;
    let json = table.to_json().map_err(|e| e.to_string())?;
    serde_json::to_string(&json).map_err(|e| e.to_string())
}

/// KKP reports for every minuscule node of a type, as a JSON array.
pub fn kkp_report_json(ty: &str) -> Result<String, String> {
    let d = datum(ty)?;
    let nodes = minuscule_nodes(d.simple_type());
    let reports = nodes
        .into_iter()
        .map(|n| {
            let case = MinusculeCase::new(&d, n)?;
            Ok(kkp_check(&d, &case)?.to_json())
        })
        .collect::<irrhodge::Result<Vec<_>>>()
        .map_err(|e| e.to_string())?;
    serde_json::to_string(&reports).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct VerifyJson {
    #[serde(rename = "type")]
    ty: String,
    rep: String,
    dim: usize,
    coxeter: usize,
    jordan: Vec<u64>,
    flat: bool,
}

/// Builds the principal triple on `rep` ("adjoint" or "std") and checks flatness.
pub fn verify_json(ty: &str, rep: &str) -> Result<String, String> {
    let d = datum(ty)?;
    let matrices = match rep {
        "adjoint" => adjoint_rep(&d),
        "std" => classical_std_rep(&d),
        other => return Err(format!("unknown representation {other:?}")),
    }
    .map_err(|e| e.to_string())?;
    let triple = principal_triple(&d, &matrices).map_err(|e| e.to_string())?;
    let jordan = jordan_type(triple.n()).map_err(|e| e.to_string())?;
    let pair = rmodule_pair(&triple, triple.coxeter() as i64).map_err(|e| e.to_string())?;
    let flat = check_flatness(&pair).map_err(|e| e.to_string())?.pass();
    serde_json::to_string(&VerifyJson {
        ty: d.simple_type().to_string(),
        rep: rep.to_string(),
        dim: triple.dim(),
        coxeter: triple.coxeter(),
        jordan: jordan.blocks().to_vec(),
        flat,
    })
    .map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn hodge(ty: &str, weight: &str) -> Result<String, JsError> {
    hodge_table_json(ty, weight).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn kkp(ty: &str) -> Result<String, JsError> {
    kkp_report_json(ty).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn verify(ty: &str, rep: &str) -> Result<String, JsError> {
    verify_json(ty, rep).map_err(|e| JsError::new(&e))
}
