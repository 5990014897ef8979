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

//! Graph-like ZX-diagrams over Z-spiders with Hadamard edges.
//!
//! A [`Diagram`] holds boundary nodes (the open wires) and Z-spiders. Every
//! spider–spider edge is a Hadamard edge; a boundary node hangs off exactly one
//! vertex through a plain or Hadamard edge, the latter standing for a
//! Hadamard gate on that wire. Vertex ids are never reused, so they can be
//! used as provenance keys across a rewrite sequence.
//!
//! Global scalars are not tracked, with one exception: rules that flip the sign
//! of a parameter introduce a phase `e^{i Σ c_j α_j}` that is linear in the
//! parameters. That phase is kept in [`Diagram::global_phase`] so that a rewrite
//! changes the linear map only by a constant factor.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::phase::{ParamId, Phase};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct VertexId(pub usize);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Io {
    Input,
    Output,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexKind {
    Boundary { io: Io, position: usize },
    Spider(Phase),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    Plain,
    Hadamard,
}

impl EdgeKind {
    pub fn toggled(self) -> EdgeKind {
        match self {
            EdgeKind::Plain => EdgeKind::Hadamard,
            EdgeKind::Hadamard => EdgeKind::Plain,
        }
    }

    /// Composite of two edges in series (H·H = I).
    pub fn compose(self, other: EdgeKind) -> EdgeKind {
        if self == other {
            EdgeKind::Plain
        } else {
            EdgeKind::Hadamard
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Diagram {
    vertices: BTreeMap<VertexId, VertexKind>,
    adj: BTreeMap<VertexId, BTreeMap<VertexId, EdgeKind>>,
    registry: BTreeMap<ParamId, VertexId>,
    global_phase: BTreeMap<ParamId, i64>,
    next_id: usize,
}

impl Diagram {
    pub fn new() -> Self {
        Diagram::default()
    }

    fn fresh(&mut self, kind: VertexKind) -> VertexId {
        let id = VertexId(self.next_id);
        self.next_id += 1;
        self.vertices.insert(id, kind);
        self.adj.insert(id, BTreeMap::new());
        id
    }

    pub fn add_boundary(&mut self, io: Io, position: usize) -> VertexId {
        self.fresh(VertexKind::Boundary { io, position })
    }

    pub fn add_spider(&mut self, phase: Phase) -> VertexId {
        let params: Vec<ParamId> = phase.params().cloned().collect();
        let id = self.fresh(VertexKind::Spider(phase));
        for p in params {
            self.registry.insert(p, id);
        }
        id
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.contains_key(&v)
    }

    pub fn kind(&self, v: VertexId) -> &VertexKind {
        &self.vertices[&v]
    }

    pub fn is_spider(&self, v: VertexId) -> bool {
        matches!(self.vertices.get(&v), Some(VertexKind::Spider(_)))
    }

    pub fn is_boundary_node(&self, v: VertexId) -> bool {
        matches!(self.vertices.get(&v), Some(VertexKind::Boundary { .. }))
    }

    /// Phase of a spider. Panics on boundary nodes.
    pub fn phase(&self, v: VertexId) -> &Phase {
        match &self.vertices[&v] {
            VertexKind::Spider(p) => p,
            VertexKind::Boundary { .. } => panic!("{v} is a boundary node"),
        }
    }

    pub fn set_phase(&mut self, v: VertexId, phase: Phase) {
        let old = match self.vertices.get_mut(&v) {
            Some(VertexKind::Spider(p)) => std::mem::replace(p, phase.clone()),
            _ => panic!("{v} is not a spider"),
        };
        for p in old.params() {
            if self.registry.get(p) == Some(&v) {
                self.registry.remove(p);
            }
        }
        for p in phase.params() {
            self.registry.insert(p.clone(), v);
        }
    }

    pub fn add_to_phase(&mut self, v: VertexId, delta: &Phase) {
        let p = self.phase(v).clone() + delta;
        self.set_phase(v, p);
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.keys().copied()
    }

    pub fn spiders(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices
            .iter()
            .filter(|(_, k)| matches!(k, VertexKind::Spider(_)))
            .map(|(&v, _)| v)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_spiders(&self) -> usize {
        self.spiders().count()
    }

    pub fn num_edges(&self) -> usize {
        let loops = self.adj.iter().filter(|(v, n)| n.contains_key(v)).count();
        (self.adj.values().map(|n| n.len()).sum::<usize>() + loops) / 2
    }

    pub fn neighbours(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj[&v].keys().copied()
    }

    pub fn neighbour_set(&self, v: VertexId) -> BTreeSet<VertexId> {
        self.neighbours(v).collect()
    }

    pub fn edges_of(&self, v: VertexId) -> impl Iterator<Item = (VertexId, EdgeKind)> + '_ {
        self.adj[&v].iter().map(|(&w, &k)| (w, k))
    }

    pub fn edge(&self, a: VertexId, b: VertexId) -> Option<EdgeKind> {
        self.adj.get(&a).and_then(|n| n.get(&b)).copied()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[&v].len()
    }

    /// All edges as `(a, b, kind)` with `a <= b`.
    pub fn edges(&self) -> Vec<(VertexId, VertexId, EdgeKind)> {
        let mut out = Vec::new();
        for (&a, n) in &self.adj {
            for (&b, &k) in n {
                if a <= b {
                    out.push((a, b, k));
                }
            }
        }
        out
    }

    /// Adds an edge, replacing any existing edge between the pair. Self-loops
    /// are accepted here so that malformed diagrams can be represented and
    /// reported by [`validate`].
    pub fn set_edge(&mut self, a: VertexId, b: VertexId, kind: EdgeKind) {
        self.adj.get_mut(&a).expect("unknown vertex").insert(b, kind);
        self.adj.get_mut(&b).expect("unknown vertex").insert(a, kind);
    }

    pub fn remove_edge(&mut self, a: VertexId, b: VertexId) {
        if let Some(n) = self.adj.get_mut(&a) {
            n.remove(&b);
        }
        if let Some(n) = self.adj.get_mut(&b) {
            n.remove(&a);
        }
    }

    /// Toggles a Hadamard edge between two distinct spiders: two Hadamard
    /// edges between the same pair cancel.
    pub fn toggle_hadamard(&mut self, a: VertexId, b: VertexId) {
        debug_assert!(a != b);
        match self.edge(a, b) {
            Some(EdgeKind::Hadamard) => self.remove_edge(a, b),
            Some(EdgeKind::Plain) => panic!("plain edge between {a} and {b}"),
            None => self.set_edge(a, b, EdgeKind::Hadamard),
        }
    }

    pub fn remove_vertex(&mut self, v: VertexId) {
        let nbrs: Vec<VertexId> = self.neighbours(v).collect();
        for w in nbrs {
            self.remove_edge(v, w);
        }
        if let Some(VertexKind::Spider(p)) = self.vertices.remove(&v) {
            for id in p.params() {
                if self.registry.get(id) == Some(&v) {
                    self.registry.remove(id);
                }
            }
        }
        self.adj.remove(&v);
    }

    /// Boundary nodes adjacent to `v`.
    pub fn boundary_nodes_of(&self, v: VertexId) -> Vec<VertexId> {
        self.neighbours(v)
            .filter(|&w| self.is_boundary_node(w))
            .collect()
    }

    /// A spider is a boundary spider when it is wired to an open wire.
    pub fn is_boundary_spider(&self, v: VertexId) -> bool {
        self.is_spider(v) && self.neighbours(v).any(|w| self.is_boundary_node(w))
    }

    pub fn is_internal(&self, v: VertexId) -> bool {
        self.is_spider(v) && !self.neighbours(v).any(|w| self.is_boundary_node(w))
    }

    fn boundaries(&self, io: Io) -> Vec<VertexId> {
        let mut bs: Vec<(usize, VertexId)> = self
            .vertices
            .iter()
            .filter_map(|(&v, k)| match k {
                VertexKind::Boundary { io: i, position } if *i == io => Some((*position, v)),
                _ => None,
            })
            .collect();
        bs.sort();
        bs.into_iter().map(|(_, v)| v).collect()
    }

    pub fn inputs(&self) -> Vec<VertexId> {
        self.boundaries(Io::Input)
    }

    pub fn outputs(&self) -> Vec<VertexId> {
        self.boundaries(Io::Output)
    }

    /// Open wires in tensor order: inputs by position, then outputs.
    pub fn wire_order(&self) -> Vec<VertexId> {
        let mut w = self.inputs();
        w.extend(self.outputs());
        w
    }

    /// Parameter → owning spider.
    pub fn registry(&self) -> &BTreeMap<ParamId, VertexId> {
        &self.registry
    }

    pub fn num_params(&self) -> usize {
        self.registry.len()
    }

    /// Spiders carrying at least one parameter.
    pub fn parametrised_spiders(&self) -> Vec<VertexId> {
        self.spiders()
            .filter(|&v| self.phase(v).is_parametrised())
            .collect()
    }

    /// Coefficients of the tracked parameter-dependent global phase.
    pub fn global_phase(&self) -> &BTreeMap<ParamId, i64> {
        &self.global_phase
    }

    /// Multiplies the diagram by `e^{i·φ}` for the parameter part of `phi`.
    /// Constant parts are dropped.
    pub fn add_global_phase(&mut self, phi: &Phase) {
        for (id, &c) in phi.terms() {
            let e = self.global_phase.entry(id.clone()).or_insert(0);
            *e += c as i64;
            if *e == 0 {
                self.global_phase.remove(id);
            }
        }
    }

    /// Every parameter the semantics depends on: those on spiders plus those
    /// in the tracked global phase.
    pub fn all_params(&self) -> BTreeSet<ParamId> {
        self.registry
            .keys()
            .chain(self.global_phase.keys())
            .cloned()
            .collect()
    }

    /// Copy with vertex ids renumbered `0..n` in id order.
    pub fn compact(&self) -> Diagram {
        let map: BTreeMap<VertexId, VertexId> = self
            .vertices
            .keys()
            .enumerate()
            .map(|(i, &v)| (v, VertexId(i)))
            .collect();
        let mut out = Diagram {
            global_phase: self.global_phase.clone(),
            next_id: map.len(),
            ..Diagram::default()
        };
        for (v, k) in &self.vertices {
            out.vertices.insert(map[v], k.clone());
            out.adj.insert(map[v], BTreeMap::new());
        }
        for (a, n) in &self.adj {
            for (b, &k) in n {
                out.adj.get_mut(&map[a]).unwrap().insert(map[b], k);
            }
        }
        for (p, v) in &self.registry {
            if let Some(&w) = map.get(v) {
                out.registry.insert(p.clone(), w);
            }
        }
        out
    }

    /// A phase-gadget axis: an internal spider with phase 0 or π that has a
    /// degree-1 parametrised neighbour. Returns that neighbour (smallest id).
    pub fn gadget_leaf(&self, axis: VertexId) -> Option<VertexId> {
        if !self.is_internal(axis) || !self.phase(axis).is_pauli() {
            return None;
        }
        self.neighbours(axis)
            .find(|&w| self.is_spider(w) && self.degree(w) == 1 && self.phase(w).is_parametrised())
    }

    pub fn is_gadget_axis(&self, v: VertexId) -> bool {
        self.is_spider(v) && self.gadget_leaf(v).is_some()
    }

    /// The axis a leaf hangs off, if `v` is a gadget's phase spider.
    pub fn gadget_axis_of(&self, v: VertexId) -> Option<VertexId> {
        if !self.is_spider(v) || self.degree(v) != 1 {
            return None;
        }
        let axis = self.neighbours(v).next()?;
        (self.is_spider(axis) && self.gadget_leaf(axis) == Some(v)).then_some(axis)
    }

    // Crate-internal escape hatch for constructing malformed diagrams in tests.
    #[cfg(test)]
    pub(crate) fn registry_mut(&mut self) -> &mut BTreeMap<ParamId, VertexId> {
        &mut self.registry
    }
}

/// One violated well-formedness condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    SelfLoop(VertexId),
    PlainSpiderEdge(VertexId, VertexId),
    BoundaryDegree { vertex: VertexId, degree: usize },
    DuplicateBoundary { io: Io, position: usize },
    /// A parametrised spider whose parameter is missing from the registry or
    /// registered to a different vertex.
    RegistryMissing { param: ParamId, vertex: VertexId },
    /// A registry entry pointing at a vertex that does not carry the parameter.
    RegistryStale { param: ParamId, vertex: VertexId },
    RepeatedParameter { param: ParamId, vertices: Vec<VertexId> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SelfLoop(v) => write!(f, "self-loop on {v}"),
            Violation::PlainSpiderEdge(a, b) => write!(f, "plain edge between spiders {a} and {b}"),
            Violation::BoundaryDegree { vertex, degree } => {
                write!(f, "boundary node {vertex} has degree {degree}")
            }
            Violation::DuplicateBoundary { io, position } => {
                write!(f, "two {io:?} boundaries at position {position}")
            }
            Violation::RegistryMissing { param, vertex } => {
                write!(f, "parameter {param} on {vertex} is not registered to it")
            }
            Violation::RegistryStale { param, vertex } => {
                write!(f, "registry maps {param} to {vertex}, which does not carry it")
            }
            Violation::RepeatedParameter { param, vertices } => {
                write!(f, "parameter {param} occurs on {vertices:?}")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the graph-like invariants. Parallel edges cannot be represented by
/// [`Diagram`], so they never appear in the report.
pub fn validate(d: &Diagram) -> ValidationReport {
    let mut violations = Vec::new();
    let mut positions = BTreeSet::new();
    let mut owners: BTreeMap<&ParamId, Vec<VertexId>> = BTreeMap::new();

    for (&v, kind) in &d.vertices {
        if d.edge(v, v).is_some() {
            violations.push(Violation::SelfLoop(v));
        }
        match kind {
            VertexKind::Boundary { io, position } => {
                if d.degree(v) != 1 {
                    violations.push(Violation::BoundaryDegree {
                        vertex: v,
                        degree: d.degree(v),
                    });
                }
                if !positions.insert((*io, *position)) {
                    violations.push(Violation::DuplicateBoundary {
                        io: *io,
                        position: *position,
                    });
                }
            }
            VertexKind::Spider(p) => {
                for (w, k) in d.edges_of(v) {
                    if v < w && d.is_spider(w) && k == EdgeKind::Plain {
                        violations.push(Violation::PlainSpiderEdge(v, w));
                    }
                }
                for id in p.params() {
                    owners.entry(id).or_default().push(v);
                    if d.registry.get(id) != Some(&v) {
                        violations.push(Violation::RegistryMissing {
                            param: id.clone(),
                            vertex: v,
                        });
                    }
                }
            }
        }
    }
    for (id, vs) in owners {
        if vs.len() > 1 {
            violations.push(Violation::RepeatedParameter {
                param: id.clone(),
                vertices: vs,
            });
        }
    }
    for (id, &v) in &d.registry {
        let carries = matches!(d.vertices.get(&v), Some(VertexKind::Spider(p)) if p.terms().contains_key(id));
        if !carries {
            violations.push(Violation::RegistryStale {
                param: id.clone(),
                vertex: v,
            });
        }
    }
    ValidationReport { violations }
}

/// A phase gadget: `phase_spider` hangs off `axis_spider`, which has phase
/// 0 or π and connects to `neighbourhood`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetView {
    pub axis_spider: VertexId,
    pub phase_spider: VertexId,
    pub neighbourhood: BTreeSet<VertexId>,
}

/// All gadgets, sorted by axis id.
pub fn find_gadgets(d: &Diagram) -> Vec<GadgetView> {
    d.spiders()
        .filter_map(|axis| {
            let leaf = d.gadget_leaf(axis)?;
            let mut neighbourhood = d.neighbour_set(axis);
            neighbourhood.remove(&leaf);
            Some(GadgetView {
                axis_spider: axis,
                phase_spider: leaf,
                neighbourhood,
            })
        })
        .collect()
}
