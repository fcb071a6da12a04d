//! Browser bindings. Each call takes matrix documents as JSON text and
//! returns a JSON run report, the same one `polymat --json` prints.

use polymat_cli::{MatrixDocument, Run, RunOptions};
use serde_json::Value;
use wasm_bindgen::prelude::wasm_bindgen;

fn options(skip_class_check: bool) -> RunOptions {
    RunOptions {
        skip_class_check,
        ..Default::default()
    }
}

fn divisor_flag(divisor: &str) -> Option<&str> {
    Some(divisor.trim()).filter(|s| !s.is_empty())
}

fn with_outputs(run: Run) -> String {
    let mut v = serde_json::to_value(&run.report).expect("reports serialize");
    let docs: serde_json::Map<String, Value> = run
        .outputs
        .iter()
        .map(|o| {
            (
                o.name.clone(),
                serde_json::to_value(&o.document).expect("documents serialize"),
            )
        })
        .collect();
    v["documents"] = Value::Object(docs);
    v.to_string()
}

/// Class tests for `(F, d)`. An empty `divisor` uses the document's.
#[wasm_bindgen]
pub fn analyze(document: &str, divisor: &str) -> String {
    with_outputs(polymat_cli::analyze(document, divisor_flag(divisor), &options(false)))
}

/// One factorization step. The report carries the emitted `G1` and `F1`
/// documents under `documents`.
#[wasm_bindgen]
pub fn factor(document: &str, divisor: &str, skip_class_check: bool) -> String {
    with_outputs(polymat_cli::factor(
        document,
        divisor_flag(divisor),
        &options(skip_class_check),
    ))
}

/// Checks `F = G * residual`, given `G` and the residual as documents.
#[wasm_bindgen]
pub fn verify(document: &str, factor: &str, residual: &str) -> String {
    with_outputs(polymat_cli::verify(
        document,
        &[factor.to_string()],
        residual,
        &options(false),
    ))
}

/// The worked 3x3 example as a document.
#[wasm_bindgen]
pub fn example_document() -> String {
    let f = polymat::examples::example1_f();
    let d = polymat::factorizer::LinearDivisor::parse("z1", "z2", f.ring()).expect("valid divisor");
    MatrixDocument::from_matrix(&f, &[(d, 1)]).to_json()
}
