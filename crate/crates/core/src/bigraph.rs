//! Bipartite qubit/gate graph and the pairwise interaction weights derived
//! from it.

use std::fmt::Write as _;

use crate::circuit::{Circuit, QubitId};

/// Qubit vertices on one side, gate vertices on the other. Each gate vertex
/// is joined to every qubit it acts on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    qubits: usize,
    gates: usize,
    /// `(gate ordinal, qubit)` in gate order, control before target.
    edges: Vec<(usize, QubitId)>,
}

impl BipartiteGraph {
    pub fn qubit_count(&self) -> usize {
        self.qubits
    }

    pub fn gate_count(&self) -> usize {
        self.gates
    }

    pub fn vertex_count(&self) -> usize {
        self.qubits + self.gates
    }

    pub fn edges(&self) -> &[(usize, QubitId)] {
        &self.edges
    }

    /// Qubits adjacent to each gate vertex.
    pub fn gate_neighbours(&self) -> Vec<Vec<QubitId>> {
        let mut adj = vec![Vec::new(); self.gates];
        for &(g, q) in &self.edges {
            adj[g].push(q);
        }
        adj
    }

    /// Counts gates with one qubit in `s1` and another in `s2`, scanning
    /// gate vertices directly. Masks use bit `i` for qubit `i`.
    pub fn connect(&self, s1: u32, s2: u32) -> u64 {
        let mut count = 0;
        for qubits in self.gate_neighbours() {
            if let [a, b] = qubits.as_slice() {
                let (a, b) = (1u32 << a.0, 1u32 << b.0);
                if (a & s1 != 0 && b & s2 != 0) || (a & s2 != 0 && b & s1 != 0) {
                    count += 1;
                }
            }
        }
        count
    }

    /// Graphviz rendering with qubits and gates on two ranks.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph bigraph {\n  rankdir=LR;\n");
        out.push_str("  { rank=same;");
        for q in 0..self.qubits {
            let _ = write!(out, " q{};", q + 1);
        }
        out.push_str(" }\n  { rank=same;");
        for g in 0..self.gates {
            let _ = write!(out, " g{};", g + 1);
        }
        out.push_str(" }\n");
        for q in 0..self.qubits {
            let _ = writeln!(out, "  q{} [shape=circle];", q + 1);
        }
        for g in 0..self.gates {
            let _ = writeln!(out, "  g{} [shape=box];", g + 1);
        }
        for &(g, q) in &self.edges {
            let _ = writeln!(out, "  g{} -- q{};", g + 1, q.number());
        }
        out.push_str("}\n");
        out
    }
}

/// Builds the bipartite graph: one edge per (gate, touched qubit), in gate order.
pub fn qc_to_bigraph(circuit: &Circuit) -> BipartiteGraph {
    let edges = circuit
        .gates()
        .iter()
        .flat_map(|g| g.qubits().into_iter().map(move |q| (g.ordinal, q)))
        .collect();
    BipartiteGraph {
        qubits: circuit.width(),
        gates: circuit.len(),
        edges,
    }
}

/// Symmetric qubit-by-qubit count of two-qubit gates, zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightMatrix {
    n: usize,
    w: Vec<u64>,
}

impl WeightMatrix {
    pub fn zeros(n: usize) -> Self {
        WeightMatrix {
            n,
            w: vec![0; n * n],
        }
    }

    /// Builds from explicit entries. Panics if the matrix is not square,
    /// symmetric, or has a non-zero diagonal.
    pub fn from_rows(rows: &[Vec<u64>]) -> Self {
        let n = rows.len();
        let mut m = WeightMatrix::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "weight matrix must be square");
            for (j, &v) in row.iter().enumerate() {
                assert_eq!(v, rows[j][i], "weight matrix must be symmetric");
                m.w[i * n + j] = v;
            }
            assert_eq!(rows[i][i], 0, "diagonal must be zero");
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.w[i * self.n + j]
    }

    pub fn add_pair(&mut self, i: usize, j: usize, weight: u64) {
        assert_ne!(i, j);
        self.w[i * self.n + j] += weight;
        self.w[j * self.n + i] += weight;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.w[i * self.n..(i + 1) * self.n]
    }

    /// Sum over unordered pairs.
    pub fn total(&self) -> u64 {
        self.w.iter().sum::<u64>() / 2
    }

    /// Applies a qubit relabeling `i -> perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> WeightMatrix {
        let mut out = WeightMatrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.w[perm[i] * self.n + perm[j]] = self.get(i, j);
            }
        }
        out
    }
}

/// Counts, for every qubit pair, the gate vertices adjacent to both.
pub fn weight_matrix(graph: &BipartiteGraph) -> WeightMatrix {
    let mut m = WeightMatrix::zeros(graph.qubit_count());
    for qubits in graph.gate_neighbours() {
        if let [a, b] = qubits.as_slice() {
            m.add_pair(a.0, b.0, 1);
        }
    }
    m
}
