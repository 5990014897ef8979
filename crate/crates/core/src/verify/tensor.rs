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

//! Dense tensor evaluation of spider networks by variable elimination.
//!
//! Every Z-spider is a single binary variable; its phase is a unary factor
//! `(1, e^{iθ})`. X-spiders and Hadamard boxes get one variable per leg.
//! Plain wires identify variables, Hadamard wires add a pairwise factor.
//! Non-open variables are summed out in minimum-degree order.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::diagram::{Diagram, EdgeKind, Io};
use crate::error::VerifyError;
use crate::network::{NodeKind, SpiderNetwork};
use crate::phase::{Assignment, Phase};

/// Maximum number of open wires accepted by [`tensor_eval`].
pub const MAX_WIRES: usize = 12;

/// Largest intermediate factor (in binary indices) contraction will build.
const MAX_SCOPE: usize = 24;

/// Amplitudes indexed little-endian over `wire_order`: wire `j` is bit `j`.
/// For a map with `n` inputs, entry `i | (o << n)` is `⟨o|M|i⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorState {
    pub amplitudes: Vec<Complex64>,
    pub wire_order: Vec<(Io, usize)>,
}

impl TensorState {
    pub fn wires(&self) -> usize {
        self.wire_order.len()
    }

    pub fn scale(&mut self, z: Complex64) {
        for a in &mut self.amplitudes {
            *a *= z;
        }
    }
}

#[derive(Clone, Debug)]
struct Factor {
    vars: Vec<usize>,
    table: Vec<Complex64>,
}

impl Factor {
    fn get(&self, values: &[usize]) -> Complex64 {
        let mut idx = 0;
        for (bit, v) in self.vars.iter().enumerate() {
            idx |= values[*v] << bit;
        }
        self.table[idx]
    }
}

fn hadamard(x: usize, y: usize) -> Factor {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    Factor {
        vars: vec![x, y],
        table: vec![h, h, h, -h],
    }
}

fn phase_value(p: &Phase, a: &Assignment) -> Result<f64, VerifyError> {
    p.eval(a).map_err(VerifyError::MissingAssignment)
}

/// Multiplies `factors` and sums out `elim` (if any). The result ranges over
/// the union of scopes minus `elim`, in ascending variable order.
fn combine(factors: &[Factor], elim: Option<usize>) -> Result<Factor, VerifyError> {
    let mut scope: BTreeSet<usize> = factors.iter().flat_map(|f| f.vars.iter().copied()).collect();
    if let Some(e) = elim {
        scope.remove(&e);
    }
    if scope.len() > MAX_SCOPE {
        return Err(VerifyError::ContractionTooLarge(scope.len()));
    }
    let vars: Vec<usize> = scope.into_iter().collect();
    let mut table = vec![Complex64::new(0.0, 0.0); 1 << vars.len()];
    let width = factors
        .iter()
        .flat_map(|f| f.vars.iter().copied())
        .max()
        .map_or(0, |m| m + 1);
    let mut values = vec![0usize; width];
    let elim_vals: &[usize] = if elim.is_some() { &[0, 1] } else { &[0] };
    for (idx, slot) in table.iter_mut().enumerate() {
        for (bit, &v) in vars.iter().enumerate() {
            values[v] = (idx >> bit) & 1;
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for &ev in elim_vals {
            if let Some(e) = elim {
                values[e] = ev;
            }
            let mut prod = Complex64::new(1.0, 0.0);
            for f in factors {
                prod *= f.get(&values);
            }
            acc += prod;
        }
        *slot = acc;
    }
    Ok(Factor { vars, table })
}

/// Evaluates a spider network. Parameters are looked up in `assignment`.
pub fn network_eval(net: &SpiderNetwork, assignment: &Assignment) -> Result<TensorState, VerifyError> {
    let n = net.nodes.len();
    let mut boundaries: Vec<(Io, usize, usize)> = net
        .nodes
        .iter()
        .enumerate()
        .filter_map(|(i, k)| match k {
            NodeKind::Boundary { io, position } => Some((*io, *position, i)),
            _ => None,
        })
        .collect();
    boundaries.sort();
    if boundaries.len() > MAX_WIRES {
        return Err(VerifyError::TooLarge {
            wires: boundaries.len(),
            max: MAX_WIRES,
        });
    }

    // Variables: one per Z-spider or boundary node, one per leg of X/H nodes.
    let mut next_var = 0;
    let mut fresh = || {
        next_var += 1;
        next_var - 1
    };
    let mut node_var: Vec<Option<usize>> = vec![None; n];
    for (i, k) in net.nodes.iter().enumerate() {
        if matches!(k, NodeKind::Z(_) | NodeKind::Boundary { .. }) {
            node_var[i] = Some(fresh());
        }
    }
    let mut legs: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut endpoints = Vec::with_capacity(net.edges.len());
    for &(a, b, k) in &net.edges {
        if a >= n || b >= n {
            return Err(VerifyError::DimensionMismatch(format!("edge to missing node {}", a.max(b))));
        }
        let mut end = |x: usize| match node_var[x] {
            Some(v) => v,
            None => {
                let v = fresh();
                legs[x].push(v);
                v
            }
        };
        let (va, vb) = (end(a), end(b));
        endpoints.push((va, vb, k));
    }
    let num_vars = next_var;

    let open: BTreeMap<usize, usize> = boundaries
        .iter()
        .enumerate()
        .map(|(pos, &(_, _, node))| (node_var[node].unwrap(), pos))
        .collect();

    // Plain wires merge variables unless both sides already hold an open wire.
    let mut parent: Vec<usize> = (0..num_vars).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut has_open: Vec<bool> = (0..num_vars).map(|v| open.contains_key(&v)).collect();
    let mut factors: Vec<Factor> = Vec::new();
    let mut identity_pairs = Vec::new();
    for &(a, b, k) in &endpoints {
        if k != EdgeKind::Plain {
            continue;
        }
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            continue;
        }
        if has_open[ra] && has_open[rb] {
            identity_pairs.push((ra, rb));
            continue;
        }
        // Keep the open variable as the root so the output index survives.
        let (root, child) = if has_open[rb] { (rb, ra) } else { (ra, rb) };
        parent[child] = root;
        has_open[root] |= has_open[child];
    }
    let mut root = |x: usize| find(&mut parent, x);
    for (a, b) in identity_pairs {
        let (ra, rb) = (root(a), root(b));
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        if ra == rb {
            continue;
        }
        factors.push(Factor {
            vars: vec![ra, rb],
            table: vec![one, zero, zero, one],
        });
    }
    for &(a, b, k) in &endpoints {
        if k != EdgeKind::Hadamard {
            continue;
        }
        let (ra, rb) = (root(a), root(b));
        if ra == rb {
            let h = FRAC_1_SQRT_2;
            factors.push(Factor {
                vars: vec![ra],
                table: vec![Complex64::new(h, 0.0), Complex64::new(-h, 0.0)],
            });
        } else {
            factors.push(hadamard(ra, rb));
        }
    }
    for (i, k) in net.nodes.iter().enumerate() {
        match k {
            NodeKind::Z(p) => {
                let theta = phase_value(p, assignment)?;
                factors.push(Factor {
                    vars: vec![root(node_var[i].unwrap())],
                    table: vec![Complex64::new(1.0, 0.0), Complex64::from_polar(1.0, theta)],
                });
            }
            NodeKind::X(p) => {
                let theta = phase_value(p, assignment)?;
                let vars: Vec<usize> = legs[i].iter().map(|&v| root(v)).collect();
                factors.push(x_factor(&vars, theta));
            }
            NodeKind::HBox => {
                if legs[i].len() != 2 {
                    return Err(VerifyError::DimensionMismatch(format!(
                        "Hadamard box {i} has {} legs",
                        legs[i].len()
                    )));
                }
                let (a, b) = (root(legs[i][0]), root(legs[i][1]));
                if a == b {
                    let h = FRAC_1_SQRT_2;
                    factors.push(Factor {
                        vars: vec![a],
                        table: vec![Complex64::new(h, 0.0), Complex64::new(-h, 0.0)],
                    });
                } else {
                    factors.push(hadamard(a, b));
                }
            }
            NodeKind::Boundary { .. } => {}
        }
    }
    let open_vars: Vec<usize> = boundaries
        .iter()
        .map(|&(_, _, node)| root(node_var[node].unwrap()))
        .collect();
    let open_set: BTreeSet<usize> = open_vars.iter().copied().collect();
    if open_set.len() != open_vars.len() {
        return Err(VerifyError::DimensionMismatch("open wires share a variable".into()));
    }

    let result = contract(factors, &open_set)?;
    let w = open_vars.len();
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << w];
    let mut values = vec![0usize; num_vars];
    for (idx, slot) in amplitudes.iter_mut().enumerate() {
        for (bit, &v) in open_vars.iter().enumerate() {
            values[v] = (idx >> bit) & 1;
        }
        *slot = result.get(&values);
    }
    Ok(TensorState {
        amplitudes,
        wire_order: boundaries.iter().map(|&(io, p, _)| (io, p)).collect(),
    })
}

/// `1 + e^{iθ}(-1)^{|x|}` over the given legs, repeated legs counted twice.
fn x_factor(vars: &[usize], theta: f64) -> Factor {
    let scope: Vec<usize> = vars.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let e = Complex64::from_polar(1.0, theta);
    let mut table = Vec::with_capacity(1 << scope.len());
    for idx in 0..1usize << scope.len() {
        let parity: usize = vars
            .iter()
            .map(|v| (idx >> scope.iter().position(|s| s == v).unwrap()) & 1)
            .sum();
        let sign = if parity.is_multiple_of(2) { 1.0 } else { -1.0 };
        table.push(Complex64::new(1.0, 0.0) + e * sign);
    }
    Factor { vars: scope, table }
}

fn contract(mut factors: Vec<Factor>, open: &BTreeSet<usize>) -> Result<Factor, VerifyError> {
    loop {
        let mut candidates: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for f in &factors {
            for &v in &f.vars {
                if !open.contains(&v) {
                    candidates.entry(v).or_default().extend(f.vars.iter().copied());
                }
            }
        }
        let Some((&var, _)) = candidates.iter().min_by_key(|(v, nb)| (nb.len(), **v)) else {
            break;
        };
        let (with, without): (Vec<Factor>, Vec<Factor>) =
            factors.into_iter().partition(|f| f.vars.contains(&var));
        factors = without;
        factors.push(combine(&with, Some(var))?);
    }
    combine(&factors, None)
}

/// Tensor of a graph-like diagram, including its tracked parameter phase.
pub fn tensor_eval(d: &Diagram, assignment: &Assignment) -> Result<TensorState, VerifyError> {
    let mut t = network_eval(&d.to_network(), assignment)?;
    let mut phase = 0.0;
    for (p, &c) in d.global_phase() {
        let v = assignment
            .get(p)
            .ok_or_else(|| VerifyError::MissingAssignment(p.clone()))?;
        phase += c as f64 * v;
    }
    t.scale(Complex64::from_polar(1.0, phase));
    Ok(t)
}
