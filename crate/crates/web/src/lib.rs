//! Browser bindings for the partitioner demo page in `www/`.
//!
//! The exported functions take circuit text and return JSON strings; the
//! plain-Rust versions in [`demo`] carry the logic and are what the tests use.

use wasm_bindgen::prelude::*;

pub mod demo;

#[wasm_bindgen(js_name = partitionCircuit)]
pub fn partition_circuit(
    text: &str,
    parts: usize,
    max_part_size: usize,
) -> Result<String, JsError> {
    demo::partition(text, parts, max_part_size).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = memoTable)]
pub fn memo_table(text: &str, parts: usize) -> Result<String, JsError> {
    demo::table(text, parts).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = generateQft)]
pub fn generate_qft(qubits: usize) -> Result<String, JsError> {
    demo::qft(qubits).map_err(|e| JsError::new(&e))
}
