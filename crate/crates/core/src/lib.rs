//! Exact partitioning of quantum circuits for distributed execution.
//!
//! A circuit is turned into a bipartite qubit/gate graph, compressed to a
//! qubit interaction matrix, and split into `K` parts with the fewest
//! two-qubit gates crossing parts (each costing one teleportation) by a
//! dynamic program over qubit subsets.

pub mod bigraph;
pub mod circuit;
pub mod exec;
pub mod generators;
pub mod oracle;
pub mod partition;
pub mod report;

pub use bigraph::{qc_to_bigraph, weight_matrix, BipartiteGraph, WeightMatrix};
pub use circuit::{
    import_real, parse_circuit, render_circuit, Circuit, CircuitError, Gate, GateKind, QubitId,
};
pub use exec::{compute_metrics, trace_execution, Locality, Metrics, TraceEntry};
pub use generators::{gen_qft, random_circuit};
pub use oracle::oracle_partition;
pub use partition::{
    connect, dp_partition, dp_partition_capped, dp_partition_with, dp_table, DpOptions, DpTable,
    PartitionAssignment, PartitionError, PartitionResult, QubitSubset,
};
pub use report::RunReport;

pub mod pipeline {
    //! Circuit-in, result-out helpers.

    use super::*;

    pub fn weights_of(circuit: &Circuit) -> WeightMatrix {
        weight_matrix(&qc_to_bigraph(circuit))
    }

    /// Builds the bigraph, then runs the DP.
    pub fn partition_circuit(
        circuit: &Circuit,
        k: usize,
        opts: &DpOptions,
    ) -> Result<PartitionResult, PartitionError> {
        dp_partition_with(&weights_of(circuit), k, opts)
    }
}
