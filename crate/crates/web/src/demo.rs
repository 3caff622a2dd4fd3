use serde::Serialize;

use qcpart::circuit::{parse_circuit, render_circuit, Circuit, GateKind};
use qcpart::exec::{compute_metrics, trace_execution, TraceEntry};
use qcpart::gen_qft;
use qcpart::partition::{dp_partition_with, dp_table, DpOptions};
use qcpart::pipeline::weights_of;
use qcpart::report::{table_rows, TableRow};

/// Largest circuit the page will partition; the search is exponential.
pub const PAGE_QUBIT_CAP: usize = 16;
/// Largest circuit whose full memo table is rendered.
pub const PAGE_TABLE_CAP: usize = 10;

#[derive(Debug, Serialize)]
pub struct DrawGate {
    /// 0-based qubit rows; control first for two-qubit gates.
    pub qubits: Vec<usize>,
    pub label: String,
}

#[derive(Debug, Serialize)]
pub struct PartitionView {
    pub width: usize,
    pub cost: u64,
    pub ratio_r: String,
    /// Part index per qubit row.
    pub part_of: Vec<usize>,
    pub parts: Vec<Vec<usize>>,
    pub gates: Vec<DrawGate>,
    pub trace: Vec<TraceEntry>,
    pub weights: Vec<Vec<u64>>,
}

#[derive(Debug, Serialize)]
pub struct TableView {
    pub k_max: usize,
    pub rows: Vec<TableRow>,
}

fn load(text: &str) -> Result<Circuit, String> {
    let c = parse_circuit(text).map_err(|e| e.to_string())?;
    if c.width() > PAGE_QUBIT_CAP {
        return Err(format!(
            "{} qubits is more than this page handles ({PAGE_QUBIT_CAP}); use the command-line tool",
            c.width()
        ));
    }
    Ok(c)
}

/// Runs the partitioner; `max_part_size == 0` means no cap.
pub fn partition(text: &str, parts: usize, max_part_size: usize) -> Result<String, String> {
    let circuit = load(text)?;
    let w = weights_of(&circuit);
    let opts = DpOptions {
        max_part_size: (max_part_size > 0).then_some(max_part_size),
        ..DpOptions::default()
    };
    let result = dp_partition_with(&w, parts, &opts).map_err(|e| e.to_string())?;
    let trace = trace_execution(&circuit, &result.assignment).map_err(|e| e.to_string())?;
    let n = circuit.width();
    let view = PartitionView {
        width: n,
        cost: result.cost,
        ratio_r: compute_metrics(&circuit, &result).ratio_display(),
        part_of: (0..n)
            .map(|q| result.assignment.part_of(qcpart::QubitId(q)))
            .collect(),
        parts: result.assignment.numbered(),
        gates: circuit
            .gates()
            .iter()
            .map(|g| DrawGate {
                qubits: g.qubits().iter().map(|q| q.index()).collect(),
                label: match &g.kind {
                    GateKind::SingleQubit { label, .. } | GateKind::TwoQubit { label, .. } => {
                        label.clone()
                    }
                },
            })
            .collect(),
        trace,
        weights: (0..n).map(|i| w.row(i).to_vec()).collect(),
    };
    serde_json::to_string(&view).map_err(|e| e.to_string())
}

pub fn table(text: &str, parts: usize) -> Result<String, String> {
    let circuit = load(text)?;
    if circuit.width() > PAGE_TABLE_CAP {
        return Err(format!(
            "the memo table is only drawn for up to {PAGE_TABLE_CAP} qubits"
        ));
    }
    let t = dp_table(&weights_of(&circuit), parts).map_err(|e| e.to_string())?;
    let view = TableView {
        k_max: t.k_max(),
        rows: table_rows(&t),
    };
    serde_json::to_string(&view).map_err(|e| e.to_string())
}

pub fn qft(qubits: usize) -> Result<String, String> {
    if qubits > PAGE_QUBIT_CAP {
        return Err(format!("at most {PAGE_QUBIT_CAP} qubits"));
    }
    gen_qft(qubits)
        .map(|c| render_circuit(&c))
        .map_err(|e| e.to_string())
}
