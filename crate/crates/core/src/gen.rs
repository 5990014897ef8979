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

//! Random circuits and diagrams for tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::circuit::{Circuit, Gate};
use crate::diagram::{Diagram, EdgeKind, Io, VertexId};
use crate::phase::{ParamId, Phase};

fn clifford_gate<R: Rng>(rng: &mut R, n: usize) -> Gate {
    let q = rng.gen_range(0..n);
    let pick = if n >= 2 { rng.gen_range(0..8) } else { rng.gen_range(0..6) };
    let other = |rng: &mut R| {
        let mut b = rng.gen_range(0..n - 1);
        if b >= q {
            b += 1;
        }
        b
    };
    match pick {
        0 => Gate::H(q),
        1 => Gate::S(q),
        2 => Gate::Sdg(q),
        3 => Gate::Z(q),
        4 => Gate::X(q),
        5 => Gate::RzClifford(q, rng.gen_range(0..4)),
        6 => Gate::Cz(q, other(rng)),
        _ => Gate::Cx(q, other(rng)),
    }
}

/// `n_clifford` random Clifford gates with `n_params` rotations `t0, t1, ...`
/// inserted at random positions, named in order of appearance.
pub fn random_circuit<R: Rng>(rng: &mut R, n_qubits: usize, n_clifford: usize, n_params: usize) -> Circuit {
    let mut slots: Vec<bool> = (0..n_clifford).map(|_| false).chain((0..n_params).map(|_| true)).collect();
    slots.shuffle(rng);
    let mut c = Circuit::new(n_qubits);
    let mut next = 0;
    for is_param in slots {
        if is_param {
            c.push(Gate::RzParam(rng.gen_range(0..n_qubits), ParamId::new(format!("t{next}"))));
            next += 1;
        } else {
            c.push(clifford_gate(rng, n_qubits));
        }
    }
    c
}

/// Like [`random_circuit`] but biased towards circuits where parameters can
/// merge: parameters sit between runs of diagonal and CX gates more often.
pub fn random_phase_circuit<R: Rng>(rng: &mut R, n_qubits: usize, n_clifford: usize, n_params: usize) -> Circuit {
    let mut c = random_circuit(rng, n_qubits, n_clifford, n_params);
    for g in c.gates.iter_mut() {
        if matches!(g, Gate::H(_)) && rng.gen_bool(0.6) {
            let q = g.qubits()[0];
            *g = if n_qubits >= 2 {
                let mut t = rng.gen_range(0..n_qubits - 1);
                if t >= q {
                    t += 1;
                }
                Gate::Cx(q, t)
            } else {
                Gate::S(q)
            };
        }
    }
    c
}

pub fn random_clifford_circuit<R: Rng>(rng: &mut R, n_qubits: usize, n_gates: usize) -> Circuit {
    random_circuit(rng, n_qubits, n_gates, 0)
}

/// Shape of a random graph-like diagram.
#[derive(Clone, Debug)]
pub struct DiagramShape {
    pub inputs: usize,
    pub outputs: usize,
    pub internal: usize,
    pub params: usize,
    pub gadgets: usize,
    pub edge_prob: f64,
}

impl Default for DiagramShape {
    fn default() -> Self {
        DiagramShape {
            inputs: 0,
            outputs: 4,
            internal: 4,
            params: 2,
            gadgets: 1,
            edge_prob: 0.4,
        }
    }
}

/// A random graph-like diagram. Each open wire gets its own boundary spider;
/// spiders get random Clifford phases, `params` of them also a parameter
/// `p0, p1, ...`; gadgets with parameters `g0, g1, ...` hang off random
/// non-empty sets of non-gadget spiders. Internal spiders with no neighbours
/// are connected to a random boundary spider.
pub fn random_diagram<R: Rng>(rng: &mut R, shape: &DiagramShape) -> Diagram {
    let mut d = Diagram::new();
    let mut spiders: Vec<VertexId> = Vec::new();
    let mut boundary_spiders = Vec::new();
    for (io, count) in [(Io::Input, shape.inputs), (Io::Output, shape.outputs)] {
        for p in 0..count {
            let b = d.add_boundary(io, p);
            let s = d.add_spider(Phase::clifford(rng.gen_range(0..4)));
            let kind = if rng.gen_bool(0.5) { EdgeKind::Plain } else { EdgeKind::Hadamard };
            d.set_edge(s, b, kind);
            spiders.push(s);
            boundary_spiders.push(s);
        }
    }
    for _ in 0..shape.internal {
        spiders.push(d.add_spider(Phase::clifford(rng.gen_range(0..4))));
    }
    for (i, &a) in spiders.iter().enumerate() {
        for &b in &spiders[i + 1..] {
            if rng.gen_bool(shape.edge_prob) {
                d.set_edge(a, b, EdgeKind::Hadamard);
            }
        }
    }
    if !boundary_spiders.is_empty() {
        for &s in &spiders {
            if d.degree(s) == 0 {
                let b = *boundary_spiders.choose(rng).unwrap();
                d.set_edge(s, b, EdgeKind::Hadamard);
            }
        }
    }
    let mut carriers = spiders.clone();
    carriers.shuffle(rng);
    for (j, &s) in carriers.iter().take(shape.params).enumerate() {
        d.add_to_phase(s, &Phase::param(ParamId::new(format!("p{j}"))));
    }
    for j in 0..shape.gadgets {
        let mut nb: Vec<VertexId> = spiders.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        if nb.is_empty() {
            nb.push(*spiders.choose(rng).unwrap());
        }
        let axis = d.add_spider(Phase::clifford(2 * rng.gen_range(0..2)));
        let leaf = d.add_spider(Phase::param(ParamId::new(format!("g{j}"))) + &Phase::clifford(rng.gen_range(0..4)));
        d.set_edge(axis, leaf, EdgeKind::Hadamard);
        for v in nb {
            d.set_edge(axis, v, EdgeKind::Hadamard);
        }
    }
    d
}
