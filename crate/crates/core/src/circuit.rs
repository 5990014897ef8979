// zxparam - parameter-count optimisation for parametrised Clifford circuits
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Parametrised Clifford circuits: data model, text format and translation to
//! graph-like diagrams.
//!
//! The text format is line oriented:
//!
//! ```text
//! qreg 2
//! h 0
//! rz(t0) 0        # symbolic parameter
//! rz(3pi/2) 1     # Clifford constant
//! cx 0 1
//! ```

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::fmt;

use crate::diagram::{Diagram, EdgeKind, Io};
use crate::error::{GraphError, ParseError};
use crate::network::{to_graph_like, NodeKind, SpiderNetwork};
use crate::phase::{ParamId, Phase};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    H(usize),
    S(usize),
    Sdg(usize),
    Z(usize),
    X(usize),
    Cz(usize, usize),
    /// Control, target.
    Cx(usize, usize),
    /// `rz(k·π/2)`, `k` in `0..4`.
    RzClifford(usize, u8),
    RzParam(usize, ParamId),
}

impl Gate {
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H(q)
            | Gate::S(q)
            | Gate::Sdg(q)
            | Gate::Z(q)
            | Gate::X(q)
            | Gate::RzClifford(q, _)
            | Gate::RzParam(q, _) => vec![q],
            Gate::Cz(a, b) | Gate::Cx(a, b) => vec![a, b],
        }
    }

    pub fn param(&self) -> Option<&ParamId> {
        match self {
            Gate::RzParam(_, p) => Some(p),
            _ => None,
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::H(q) => write!(f, "h {q}"),
            Gate::S(q) => write!(f, "s {q}"),
            Gate::Sdg(q) => write!(f, "sdg {q}"),
            Gate::Z(q) => write!(f, "z {q}"),
            Gate::X(q) => write!(f, "x {q}"),
            Gate::Cz(a, b) => write!(f, "cz {a} {b}"),
            Gate::Cx(a, b) => write!(f, "cx {a} {b}"),
            Gate::RzClifford(q, k) => write!(f, "rz({k}pi/2) {q}"),
            Gate::RzParam(q, p) => write!(f, "rz({p}) {q}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Circuit {
    pub n_qubits: usize,
    pub gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Circuit {
            n_qubits,
            gates: Vec::new(),
        }
    }

    pub fn push(&mut self, g: Gate) {
        self.gates.push(g);
    }

    /// Parameters in order of first appearance.
    pub fn params(&self) -> Vec<ParamId> {
        let mut seen = BTreeSet::new();
        self.gates
            .iter()
            .filter_map(Gate::param)
            .filter(|p| seen.insert((*p).clone()))
            .cloned()
            .collect()
    }

    pub fn num_params(&self) -> usize {
        self.params().len()
    }

    /// Gates other than parametrised rotations, in order.
    pub fn clifford_gates(&self) -> Vec<&Gate> {
        self.gates.iter().filter(|g| g.param().is_none()).collect()
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&emit_circuit(self))
    }
}

pub fn emit_circuit(c: &Circuit) -> String {
    let mut out = format!("qreg {}\n", c.n_qubits);
    for g in &c.gates {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Token { text: &line[s..i], column: s + 1 });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token { text: &line[s..], column: s + 1 });
    }
    out
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && s != "pi"
}

/// Value of a numeric angle in radians, or `None` if it is not a number.
/// Accepts plain radians and `[coef][*]pi[/den]` forms.
fn numeric_angle(s: &str) -> Option<f64> {
    if let Ok(v) = s.parse::<f64>() {
        return Some(v);
    }
    let (before, after) = s.split_once("pi")?;
    let coef = match before.trim_end_matches('*') {
        "" => 1.0,
        "-" => -1.0,
        "+" => 1.0,
        c => c.parse::<f64>().ok()?,
    };
    let den = match after {
        "" => 1.0,
        d => d.strip_prefix('/')?.parse::<f64>().ok()?,
    };
    (den != 0.0).then_some(coef * PI / den)
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

pub fn parse_circuit(text: &str) -> Result<Circuit, ParseError> {
    let mut circuit: Option<Circuit> = None;
    let mut params: BTreeSet<ParamId> = BTreeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        let toks = tokens(line);
        let Some(head) = toks.first() else { continue };

        let Some(c) = circuit.as_mut() else {
            if head.text != "qreg" {
                return Err(syntax(line_no, head.column, "expected `qreg <n>` first"));
            }
            if toks.len() != 2 {
                return Err(syntax(line_no, head.column, "`qreg` takes one argument"));
            }
            let n = toks[1]
                .text
                .parse::<usize>()
                .map_err(|_| syntax(line_no, toks[1].column, "expected a qubit count"))?;
            circuit = Some(Circuit::new(n));
            continue;
        };

        let n = c.n_qubits;
        let qubit = |t: &Token| -> Result<usize, ParseError> {
            let q = t
                .text
                .parse::<usize>()
                .map_err(|_| syntax(line_no, t.column, format!("expected a qubit index, found `{}`", t.text)))?;
            if q >= n {
                return Err(syntax(line_no, t.column, format!("qubit {q} out of range")));
            }
            Ok(q)
        };
        let arity = |k: usize| -> Result<(), ParseError> {
            if toks.len() != k + 1 {
                return Err(syntax(
                    line_no,
                    head.column,
                    format!("`{}` takes {k} qubit argument(s)", head.text),
                ));
            }
            Ok(())
        };

        let gate = match head.text {
            "qreg" => return Err(syntax(line_no, head.column, "duplicate `qreg`")),
            "h" | "s" | "sdg" | "z" | "x" => {
                arity(1)?;
                let q = qubit(&toks[1])?;
                match head.text {
                    "h" => Gate::H(q),
                    "s" => Gate::S(q),
                    "sdg" => Gate::Sdg(q),
                    "z" => Gate::Z(q),
                    _ => Gate::X(q),
                }
            }
            "cz" | "cx" => {
                arity(2)?;
                let (a, b) = (qubit(&toks[1])?, qubit(&toks[2])?);
                if a == b {
                    return Err(syntax(line_no, toks[2].column, "two-qubit gate on a single qubit"));
                }
                if head.text == "cz" {
                    Gate::Cz(a, b)
                } else {
                    Gate::Cx(a, b)
                }
            }
            t if t.starts_with("rz(") => {
                arity(1)?;
                let Some(arg) = t.strip_prefix("rz(").and_then(|r| r.strip_suffix(')')) else {
                    return Err(syntax(line_no, head.column, "unterminated `rz(`"));
                };
                let q = qubit(&toks[1])?;
                let arg_col = head.column + 3;
                if is_ident(arg) {
                    let id = ParamId::from(arg);
                    if !params.insert(id.clone()) {
                        return Err(ParseError::RepeatedParameter { line: line_no, param: id });
                    }
                    Gate::RzParam(q, id)
                } else if let Some(angle) = numeric_angle(arg) {
                    let k = angle / (PI / 2.0);
                    if (k - k.round()).abs() > 1e-9 {
                        return Err(ParseError::NonCliffordConstant {
                            line: line_no,
                            column: arg_col,
                            text: arg.to_string(),
                        });
                    }
                    Gate::RzClifford(q, (k.round() as i64).rem_euclid(4) as u8)
                } else {
                    return Err(syntax(line_no, arg_col, format!("bad rotation angle `{arg}`")));
                }
            }
            other => return Err(syntax(line_no, head.column, format!("unknown gate `{other}`"))),
        };
        c.push(gate);
    }
    circuit.ok_or_else(|| syntax(1, 1, "missing `qreg` declaration"))
}

/// Spider network of the circuit. Each gate becomes its standard ZX piece;
/// `inputs` chooses open input wires or `|0⟩` preparations.
fn circuit_network(c: &Circuit, open_inputs: bool) -> SpiderNetwork {
    let mut net = SpiderNetwork::new();
    let mut front: Vec<usize> = (0..c.n_qubits)
        .map(|q| {
            if open_inputs {
                net.add(NodeKind::Boundary { io: Io::Input, position: q })
            } else {
                net.add(NodeKind::X(Phase::zero()))
            }
        })
        .collect();
    let step = |net: &mut SpiderNetwork, front: &mut Vec<usize>, q: usize, node: NodeKind| {
        let v = net.add(node);
        net.wire(front[q], v);
        front[q] = v;
        v
    };
    for g in &c.gates {
        match g {
            Gate::H(q) => {
                step(&mut net, &mut front, *q, NodeKind::HBox);
            }
            Gate::S(q) => {
                step(&mut net, &mut front, *q, NodeKind::Z(Phase::clifford(1)));
            }
            Gate::Sdg(q) => {
                step(&mut net, &mut front, *q, NodeKind::Z(Phase::clifford(3)));
            }
            Gate::Z(q) => {
                step(&mut net, &mut front, *q, NodeKind::Z(Phase::clifford(2)));
            }
            Gate::X(q) => {
                step(&mut net, &mut front, *q, NodeKind::X(Phase::clifford(2)));
            }
            Gate::RzClifford(q, k) => {
                step(&mut net, &mut front, *q, NodeKind::Z(Phase::clifford(*k as i64)));
            }
            Gate::RzParam(q, p) => {
                step(&mut net, &mut front, *q, NodeKind::Z(Phase::param(p.clone())));
            }
            Gate::Cz(a, b) => {
                let za = step(&mut net, &mut front, *a, NodeKind::Z(Phase::zero()));
                let zb = step(&mut net, &mut front, *b, NodeKind::Z(Phase::zero()));
                net.connect(za, zb, EdgeKind::Hadamard);
            }
            Gate::Cx(ctl, tgt) => {
                let z = step(&mut net, &mut front, *ctl, NodeKind::Z(Phase::zero()));
                let x = step(&mut net, &mut front, *tgt, NodeKind::X(Phase::zero()));
                net.wire(z, x);
            }
        }
    }
    for (q, &f) in front.iter().enumerate() {
        let o = net.add(NodeKind::Boundary { io: Io::Output, position: q });
        net.wire(f, o);
    }
    net
}

/// The circuit as a spider network with open inputs and outputs.
pub fn circuit_to_network(c: &Circuit) -> SpiderNetwork {
    circuit_network(c, true)
}

/// Graph-like diagram proportional to the circuit's unitary. Fails only if a
/// parameter occurs on two gates.
pub fn circuit_to_diagram(c: &Circuit) -> Result<Diagram, GraphError> {
    to_graph_like(&circuit_network(c, true))
}

/// Graph-like diagram of the circuit applied to `|0…0⟩`.
pub fn circuit_state_diagram(c: &Circuit) -> Result<Diagram, GraphError> {
    to_graph_like(&circuit_network(c, false))
}
