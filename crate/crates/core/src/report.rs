//! Serializable run report shared by the command line and the web demo.

use serde::{Deserialize, Serialize};

use crate::circuit::Circuit;
use crate::exec::{compute_metrics, trace_execution, TraceEntry};
use crate::partition::{DpTable, PartitionResult, QubitSubset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Dp,
    Oracle,
}

/// Effective options echoed back in the report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportFlags {
    pub method: Method,
    pub max_part_size: Option<usize>,
    /// A part-size cap actually restricted the search.
    pub constrained: bool,
    pub threads: usize,
    pub decompose_mct: bool,
    /// Multi-control gates were replaced by pairwise CNOTs.
    pub approximate: bool,
    pub force: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub index: u32,
    pub set: String,
    /// One entry per `k`, `None` where unreachable.
    pub costs: Vec<Option<u64>>,
}

pub fn table_rows(table: &DpTable) -> Vec<TableRow> {
    let full = if table.qubit_count() >= 32 {
        u32::MAX
    } else {
        (1u32 << table.qubit_count()) - 1
    };
    (1..=full)
        .map(|mask| TableRow {
            index: mask,
            set: QubitSubset(mask).to_string(),
            costs: (1..=table.k_max()).map(|k| table.get(mask, k)).collect(),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub circuit_name: String,
    pub width: usize,
    pub gate_count: usize,
    pub k: usize,
    pub cost: u64,
    pub ratio_r: String,
    /// 1-based qubit numbers per part.
    pub assignment: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dp_table: Option<Vec<TableRow>>,
    /// Omitted when timing is disabled so output is byte-stable.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
    /// Set by oracle runs that were compared against the DP.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matches_dp: Option<bool>,
    pub flags: ReportFlags,
}

impl RunReport {
    pub fn new(
        circuit: &Circuit,
        result: &PartitionResult,
        flags: ReportFlags,
        with_trace: bool,
    ) -> Self {
        let metrics = compute_metrics(circuit, result);
        let trace = with_trace.then(|| {
            trace_execution(circuit, &result.assignment)
                .expect("result was computed for this circuit")
        });
        RunReport {
            circuit_name: circuit.name().to_string(),
            width: circuit.width(),
            gate_count: circuit.len(),
            k: result.assignment.k(),
            cost: result.cost,
            ratio_r: metrics.ratio_display(),
            assignment: result.assignment.numbered(),
            trace,
            dp_table: result.table.as_ref().map(table_rows),
            wall_time_ms: None,
            matches_dp: None,
            flags,
        }
    }

    /// Human-readable summary.
    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self
            .assignment
            .iter()
            .enumerate()
            .map(|(p, qs)| {
                let names: Vec<String> = qs.iter().map(|q| format!("q{q}")).collect();
                format!("p{p}={{{}}}", names.join(","))
            })
            .collect();
        let mut out = format!(
            "circuit: {} ({} qubits, {} gates)\nmethod: {}\nK: {}\nteleportations: {}\nR: {}\nparts: {}\n",
            self.circuit_name,
            self.width,
            self.gate_count,
            match self.flags.method {
                Method::Dp => "dp",
                Method::Oracle => "oracle",
            },
            self.k,
            self.cost,
            self.ratio_r,
            parts.join(" "),
        );
        if let Some(m) = self.flags.max_part_size {
            out.push_str(&format!(
                "max part size: {m}{}\n",
                if self.flags.constrained {
                    " (constrained)"
                } else {
                    ""
                }
            ));
        }
        if self.flags.approximate {
            out.push_str(
                "note: multi-control gates were split into pairwise CNOTs; cost is approximate\n",
            );
        }
        if let Some(m) = self.matches_dp {
            out.push_str(&format!("matches dp: {}\n", if m { "yes" } else { "NO" }));
        }
        if let Some(ms) = self.wall_time_ms {
            out.push_str(&format!("time: {ms} ms\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::parse_circuit;
    use crate::partition::{dp_partition_with, DpOptions};
    use crate::pipeline::weights_of;

    #[test]
    fn json_round_trip() {
        let c = parse_circuit("qubits 3\ncnot 1 2\nh 3\ncnot 2 3").unwrap();
        let opts = DpOptions {
            retain_table: true,
            ..DpOptions::default()
        };
        let r = dp_partition_with(&weights_of(&c), 2, &opts).unwrap();
        let flags = ReportFlags {
            method: Method::Dp,
            max_part_size: None,
            constrained: false,
            threads: 1,
            decompose_mct: false,
            approximate: false,
            force: false,
        };
        let mut report = RunReport::new(&c, &r, flags, true);
        report.wall_time_ms = Some(3);
        let json = serde_json::to_string(&report).unwrap();
        let back: RunReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
        assert_eq!(report.dp_table.as_ref().unwrap().len(), 7);
        assert!(report.to_text().contains("teleportations: 1"));
    }
}
