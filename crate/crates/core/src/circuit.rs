//! Gate-list circuit model and the `.qc` / RevLib `.real` readers.
//!
//! Qubits are 0-based inside the crate and 1-based in every text format.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A qubit index, 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct QubitId(pub usize);

impl QubitId {
    pub fn index(self) -> usize {
        self.0
    }

    /// The 1-based number used in files and reports.
    pub fn number(self) -> usize {
        self.0 + 1
    }
}

impl fmt::Display for QubitId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q{}", self.number())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum GateKind {
    SingleQubit {
        label: String,
        target: QubitId,
    },
    TwoQubit {
        label: String,
        control: QubitId,
        target: QubitId,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gate {
    pub ordinal: usize,
    pub kind: GateKind,
}

impl Gate {
    pub fn label(&self) -> &str {
        match &self.kind {
            GateKind::SingleQubit { label, .. } | GateKind::TwoQubit { label, .. } => label,
        }
    }

    /// Qubits touched, control first for two-qubit gates.
    pub fn qubits(&self) -> Vec<QubitId> {
        match self.kind {
            GateKind::SingleQubit { target, .. } => vec![target],
            GateKind::TwoQubit {
                control, target, ..
            } => vec![control, target],
        }
    }

    pub fn is_two_qubit(&self) -> bool {
        matches!(self.kind, GateKind::TwoQubit { .. })
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CircuitError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: qubit {qubit} out of range 1..={width}")]
    QubitOutOfRange {
        line: usize,
        qubit: usize,
        width: usize,
    },
    #[error("line {line}: control and target are both qubit {qubit}")]
    SelfLoop { line: usize, qubit: usize },
    #[error("missing `qubits <n>` header")]
    MissingHeader,
    #[error("circuit width must be at least 1")]
    EmptyWidth,
    #[error("line {line}: unsupported gate `{gate}` ({arity} qubits); pass decompose_mct to split it into CNOTs")]
    UnsupportedGate {
        line: usize,
        gate: String,
        arity: usize,
    },
    #[error("malformed .real header: {0}")]
    MalformedHeader(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator size must be at least 1, got {0}")]
    GeneratorSize(usize),
}

/// An ordered gate list over `width` qubits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Circuit {
    name: String,
    width: usize,
    gates: Vec<Gate>,
    /// Set when multi-control gates were replaced by pairwise CNOTs on import.
    approximate: bool,
}

impl Circuit {
    pub fn new(name: impl Into<String>, width: usize) -> Result<Self, CircuitError> {
        if width == 0 {
            return Err(CircuitError::EmptyWidth);
        }
        Ok(Circuit {
            name: name.into(),
            width,
            gates: Vec::new(),
            approximate: false,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn is_approximate(&self) -> bool {
        self.approximate
    }

    pub fn two_qubit_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_two_qubit()).count()
    }

    /// Appends a single-qubit gate. Panics if `target` is out of range.
    pub fn push_single(&mut self, label: impl Into<String>, target: usize) {
        assert!(target < self.width, "qubit {target} out of range");
        let ordinal = self.gates.len();
        self.gates.push(Gate {
            ordinal,
            kind: GateKind::SingleQubit {
                label: label.into(),
                target: QubitId(target),
            },
        });
    }

    /// Appends a two-qubit gate. Panics on out-of-range qubits or `control == target`.
    pub fn push_two(&mut self, label: impl Into<String>, control: usize, target: usize) {
        assert!(
            control < self.width && target < self.width,
            "qubit out of range"
        );
        assert_ne!(control, target, "two-qubit gate needs distinct qubits");
        let ordinal = self.gates.len();
        self.gates.push(Gate {
            ordinal,
            kind: GateKind::TwoQubit {
                label: label.into(),
                control: QubitId(control),
                target: QubitId(target),
            },
        });
    }

    /// Same circuit with gates in a different order; ordinals are reassigned.
    pub fn with_gate_order(&self, order: &[usize]) -> Circuit {
        assert_eq!(order.len(), self.gates.len());
        let gates = order
            .iter()
            .enumerate()
            .map(|(ordinal, &src)| Gate {
                ordinal,
                kind: self.gates[src].kind.clone(),
            })
            .collect();
        Circuit {
            gates,
            ..self.clone()
        }
    }

    /// Same circuit with qubit `i` renamed to `perm[i]`.
    pub fn relabeled(&self, perm: &[usize]) -> Circuit {
        assert_eq!(perm.len(), self.width);
        let map = |q: QubitId| QubitId(perm[q.0]);
        let gates = self
            .gates
            .iter()
            .map(|g| Gate {
                ordinal: g.ordinal,
                kind: match &g.kind {
                    GateKind::SingleQubit { label, target } => GateKind::SingleQubit {
                        label: label.clone(),
                        target: map(*target),
                    },
                    GateKind::TwoQubit {
                        label,
                        control,
                        target,
                    } => GateKind::TwoQubit {
                        label: label.clone(),
                        control: map(*control),
                        target: map(*target),
                    },
                },
            })
            .collect();
        Circuit {
            gates,
            ..self.clone()
        }
    }
}

/// Parses the `.qc` line format.
///
/// The first meaningful line must be `qubits <n>`. Every other non-empty line
/// is `<label> <q>` or `<label> <control> <target>` with 1-based indices.
/// `#` starts a comment.
pub fn parse_circuit(text: &str) -> Result<Circuit, CircuitError> {
    let mut circuit: Option<Circuit> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let Some(c) = circuit.as_mut() else {
            if !tokens[0].eq_ignore_ascii_case("qubits") {
                return Err(CircuitError::MissingHeader);
            }
            if tokens.len() != 2 {
                return Err(syntax(line, "expected `qubits <n>`"));
            }
            let n = parse_index(tokens[1], line)?;
            if n == 0 {
                return Err(CircuitError::EmptyWidth);
            }
            circuit = Some(Circuit::new("circuit", n)?);
            continue;
        };
        let label = tokens[0];
        let operands = tokens[1..]
            .iter()
            .map(|t| parse_qubit(t, c.width, line))
            .collect::<Result<Vec<_>, _>>()?;
        match operands.as_slice() {
            [q] => c.push_single(label, *q),
            [a, b] if a == b => return Err(CircuitError::SelfLoop { line, qubit: a + 1 }),
            [a, b] => c.push_two(label, *a, *b),
            [] => return Err(syntax(line, "gate has no operands")),
            _ => {
                return Err(syntax(
                    line,
                    &format!(
                        "`{label}` has {} operands; only 1 or 2 allowed",
                        operands.len()
                    ),
                ))
            }
        }
    }
    circuit.ok_or(CircuitError::MissingHeader)
}

/// Renders a circuit back to `.qc` text.
pub fn render_circuit(circuit: &Circuit) -> String {
    let mut out = format!("qubits {}\n", circuit.width);
    for gate in &circuit.gates {
        match &gate.kind {
            GateKind::SingleQubit { label, target } => {
                out.push_str(&format!("{label} {}\n", target.number()))
            }
            GateKind::TwoQubit {
                label,
                control,
                target,
            } => out.push_str(&format!(
                "{label} {} {}\n",
                control.number(),
                target.number()
            )),
        }
    }
    out
}

fn syntax(line: usize, message: &str) -> CircuitError {
    CircuitError::Syntax {
        line,
        message: message.to_string(),
    }
}

fn parse_index(token: &str, line: usize) -> Result<usize, CircuitError> {
    token
        .parse::<usize>()
        .map_err(|_| syntax(line, &format!("`{token}` is not a non-negative integer")))
}

fn parse_qubit(token: &str, width: usize, line: usize) -> Result<usize, CircuitError> {
    let q = parse_index(token, line)?;
    if q == 0 || q > width {
        return Err(CircuitError::QubitOutOfRange {
            line,
            qubit: q,
            width,
        });
    }
    Ok(q - 1)
}

/// Imports the NOT/CNOT subset of RevLib's `.real` format.
///
/// `t1 a` becomes a NOT, `t2 a b` a CNOT and any other one- or two-operand
/// gate keeps its name as a label. Toffoli gates with two or more controls are
/// rejected unless `decompose_mct` is set, in which case each control gets its
/// own CNOT onto the target and the circuit is marked approximate.
pub fn import_real(text: &str, decompose_mct: bool) -> Result<Circuit, CircuitError> {
    let mut numvars: Option<usize> = None;
    let mut variables: Option<HashMap<String, usize>> = None;
    let mut circuit: Option<Circuit> = None;
    let mut ended = false;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() || ended {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let head = tokens[0].to_ascii_lowercase();
        if head.starts_with('.') {
            match head.as_str() {
                ".numvars" => {
                    let n = tokens
                        .get(1)
                        .and_then(|t| t.parse::<usize>().ok())
                        .ok_or_else(|| {
                            CircuitError::MalformedHeader(format!("line {line}: bad .numvars"))
                        })?;
                    numvars = Some(n);
                }
                ".variables" => {
                    let names: HashMap<String, usize> = tokens[1..]
                        .iter()
                        .enumerate()
                        .map(|(i, name)| (name.to_string(), i))
                        .collect();
                    if names.len() != tokens.len() - 1 {
                        return Err(CircuitError::MalformedHeader(format!(
                            "line {line}: duplicate variable name"
                        )));
                    }
                    variables = Some(names);
                }
                ".begin" => {
                    let n = numvars.ok_or_else(|| {
                        CircuitError::MalformedHeader(".begin before .numvars".into())
                    })?;
                    let vars = variables.as_ref().ok_or_else(|| {
                        CircuitError::MalformedHeader(".begin before .variables".into())
                    })?;
                    if vars.len() != n {
                        return Err(CircuitError::MalformedHeader(format!(
                            ".numvars is {n} but {} variables are declared",
                            vars.len()
                        )));
                    }
                    circuit = Some(
                        Circuit::new("circuit", n)
                            .map_err(|_| CircuitError::MalformedHeader(".numvars is 0".into()))?,
                    );
                }
                ".end" => ended = true,
                // .version, .inputs, .outputs, .constants, .garbage, ...
                _ => {}
            }
            continue;
        }

        let (Some(c), Some(vars)) = (circuit.as_mut(), variables.as_ref()) else {
            return Err(CircuitError::MalformedHeader(format!(
                "line {line}: gate before .begin"
            )));
        };
        let operands = tokens[1..]
            .iter()
            .map(|name| {
                vars.get(*name)
                    .copied()
                    .ok_or_else(|| syntax(line, &format!("unknown variable `{name}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if operands.is_empty() {
            return Err(syntax(line, "gate has no operands"));
        }
        let mut seen = operands.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != operands.len() {
            return Err(CircuitError::SelfLoop {
                line,
                qubit: operands[0] + 1,
            });
        }

        let toffoli_arity = head.strip_prefix('t').and_then(|k| k.parse::<usize>().ok());
        if let Some(k) = toffoli_arity {
            if k != operands.len() {
                return Err(syntax(
                    line,
                    &format!(
                        "`{}` expects {k} operands, got {}",
                        tokens[0],
                        operands.len()
                    ),
                ));
            }
        }
        match (toffoli_arity, operands.as_slice()) {
            (Some(1), [q]) => c.push_single("x", *q),
            (Some(2), [ctrl, tgt]) => c.push_two("cnot", *ctrl, *tgt),
            (Some(_), [controls @ .., tgt]) => {
                if !decompose_mct {
                    return Err(CircuitError::UnsupportedGate {
                        line,
                        gate: tokens[0].to_string(),
                        arity: operands.len(),
                    });
                }
                for ctrl in controls {
                    c.push_two("cnot", *ctrl, *tgt);
                }
                c.approximate = true;
            }
            (None, [q]) => c.push_single(tokens[0], *q),
            (None, [a, b]) => c.push_two(tokens[0], *a, *b),
            _ => {
                return Err(CircuitError::UnsupportedGate {
                    line,
                    gate: tokens[0].to_string(),
                    arity: operands.len(),
                })
            }
        }
    }

    match circuit {
        Some(c) if ended => Ok(c),
        Some(_) => Err(CircuitError::MalformedHeader("missing .end".into())),
        None => Err(CircuitError::MalformedHeader("missing .begin".into())),
    }
}
