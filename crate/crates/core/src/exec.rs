//! Gate-by-gate execution trace under a partition, and run metrics.

use std::fmt::Write as _;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::{Circuit, GateKind};
use crate::partition::{PartitionAssignment, PartitionResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Locality {
    Local,
    Global,
}

impl Locality {
    pub fn letter(self) -> char {
        match self {
            Locality::Local => 'L',
            Locality::Global => 'G',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub gate_ordinal: usize,
    pub rendering: String,
    pub kind: Locality,
    pub parts: Vec<usize>,
    pub teleports_so_far: u64,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("assignment covers {assignment} qubits but the circuit has {circuit}")]
pub struct WidthMismatch {
    pub assignment: usize,
    pub circuit: usize,
}

/// Classifies every gate in execution order. A two-qubit gate whose qubits
/// sit in different parts is global and costs one teleportation.
///
/// Renderings use 1-based qubits and 0-based parts: `H(q4,p0)`,
/// `CNOT(q1,q2,p0)` when local, `CNOT(q3,p1,q1,p0)` when global.
pub fn trace_execution(
    circuit: &Circuit,
    assignment: &PartitionAssignment,
) -> Result<Vec<TraceEntry>, WidthMismatch> {
    if assignment.qubit_count() != circuit.width() {
        return Err(WidthMismatch {
            assignment: assignment.qubit_count(),
            circuit: circuit.width(),
        });
    }
    let mut teleports = 0;
    let entries = circuit
        .gates()
        .iter()
        .map(|gate| {
            let label = gate.label().to_ascii_uppercase();
            let (rendering, kind, parts) = match gate.kind {
                GateKind::SingleQubit { target, .. } => {
                    let p = assignment.part_of(target);
                    (format!("{label}({target},p{p})"), Locality::Local, vec![p])
                }
                GateKind::TwoQubit {
                    control, target, ..
                } => {
                    let pc = assignment.part_of(control);
                    let pt = assignment.part_of(target);
                    if pc == pt {
                        (
                            format!("{label}({control},{target},p{pc})"),
                            Locality::Local,
                            vec![pc],
                        )
                    } else {
                        (
                            format!("{label}({control},p{pc},{target},p{pt})"),
                            Locality::Global,
                            vec![pc.min(pt), pc.max(pt)],
                        )
                    }
                }
            };
            if kind == Locality::Global {
                teleports += 1;
            }
            TraceEntry {
                gate_ordinal: gate.ordinal,
                rendering,
                kind,
                parts,
                teleports_so_far: teleports,
            }
        })
        .collect();
    Ok(entries)
}

/// Aligned three-column table: gate number, rendering, L/G.
pub fn render_trace_table(trace: &[TraceEntry]) -> String {
    let header = ("# of Gate", "Gate_name", "Type");
    let names: Vec<String> = trace
        .iter()
        .map(|e| format!("g{}", e.gate_ordinal + 1))
        .collect();
    let w0 = names
        .iter()
        .map(String::len)
        .max()
        .unwrap_or(0)
        .max(header.0.len());
    let w1 = trace
        .iter()
        .map(|e| e.rendering.len())
        .max()
        .unwrap_or(0)
        .max(header.1.len());
    let mut out = String::new();
    let _ = writeln!(out, "{:<w0$} | {:<w1$} | {}", header.0, header.1, header.2);
    let _ = writeln!(
        out,
        "{}-+-{}-+-{}",
        "-".repeat(w0),
        "-".repeat(w1),
        "-".repeat(header.2.len())
    );
    for (name, e) in names.iter().zip(trace) {
        let _ = writeln!(
            out,
            "{:<w0$} | {:<w1$} | {}",
            name,
            e.rendering,
            e.kind.letter()
        );
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Metrics {
    pub teleportations: u64,
    pub qubits: usize,
    /// `teleportations / (2 * qubits)`, exact.
    pub ratio_r: Ratio<u64>,
    pub per_part_sizes: Vec<usize>,
}

impl Metrics {
    /// `R` with two decimals, rounded half up.
    pub fn ratio_display(&self) -> String {
        format_ratio(self.ratio_r)
    }
}

pub fn format_ratio(r: Ratio<u64>) -> String {
    let hundredths =
        (u128::from(*r.numer()) * 200 + u128::from(*r.denom())) / (2 * u128::from(*r.denom()));
    format!("{}.{:02}", hundredths / 100, hundredths % 100)
}

pub fn compute_metrics(circuit: &Circuit, result: &PartitionResult) -> Metrics {
    let qubits = circuit.width();
    Metrics {
        teleportations: result.cost,
        qubits,
        ratio_r: Ratio::new(result.cost, 2 * qubits as u64),
        per_part_sizes: result.assignment.part_sizes(),
    }
}
