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

//! Unrestricted spider networks and their conversion to graph-like form.

use std::collections::{BTreeMap, BTreeSet};

use crate::diagram::{Diagram, EdgeKind, Io, VertexId, VertexKind};
use crate::error::GraphError;
use crate::phase::{ParamId, Phase};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Boundary { io: Io, position: usize },
    Z(Phase),
    X(Phase),
    /// Two-legged Hadamard box.
    HBox,
}

/// A ZX-diagram with Z and X spiders, Hadamard boxes and parallel edges
/// allowed. Nodes are addressed by their index.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpiderNetwork {
    pub nodes: Vec<NodeKind>,
    pub edges: Vec<(usize, usize, EdgeKind)>,
}

impl SpiderNetwork {
    pub fn new() -> Self {
        SpiderNetwork::default()
    }

    pub fn add(&mut self, kind: NodeKind) -> usize {
        self.nodes.push(kind);
        self.nodes.len() - 1
    }

    pub fn connect(&mut self, a: usize, b: usize, kind: EdgeKind) {
        self.edges.push((a, b, kind));
    }

    pub fn wire(&mut self, a: usize, b: usize) {
        self.connect(a, b, EdgeKind::Plain);
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // Smaller index wins so that fused spiders keep the earliest position.
        if ra < rb {
            self.0[rb] = ra;
        } else if rb < ra {
            self.0[ra] = rb;
        }
    }
}

/// Converts a network into a graph-like [`Diagram`] equal to it up to a
/// nonzero scalar.
///
/// Hadamard boxes become Hadamard edges, X-spiders are colour-changed, Z
/// spiders joined by plain edges are fused, Hadamard self-loops contribute a
/// π phase and pairs of parallel Hadamard edges cancel.
pub fn to_graph_like(raw: &SpiderNetwork) -> Result<Diagram, GraphError> {
    let n = raw.nodes.len();
    let mut seen: BTreeMap<&ParamId, usize> = BTreeMap::new();
    for (i, node) in raw.nodes.iter().enumerate() {
        if let NodeKind::Z(p) | NodeKind::X(p) = node {
            for id in p.params() {
                if seen.insert(id, i).is_some() {
                    return Err(GraphError::RepeatedParameter(id.clone()));
                }
            }
        }
    }
    for &(a, b, _) in &raw.edges {
        if a >= n || b >= n {
            return Err(GraphError::MissingNode(a.max(b)));
        }
    }

    // Edge list indexed so that Hadamard boxes can be spliced out.
    let mut edges: Vec<Option<(usize, usize, EdgeKind)>> =
        raw.edges.iter().copied().map(Some).collect();
    for (h, node) in raw.nodes.iter().enumerate() {
        if *node != NodeKind::HBox {
            continue;
        }
        let incident: Vec<usize> = edges
            .iter()
            .enumerate()
            .filter_map(|(i, e)| e.filter(|&(a, b, _)| a == h || b == h).map(|_| i))
            .collect();
        let legs: usize = incident
            .iter()
            .map(|&i| {
                let (a, b, _) = edges[i].unwrap();
                (a == h) as usize + (b == h) as usize
            })
            .sum();
        if legs != 2 {
            return Err(GraphError::HBoxArity { node: h, legs });
        }
        if incident.len() == 1 {
            // Box wired to itself: a closed loop through a Hadamard, a scalar.
            edges[incident[0]] = None;
            continue;
        }
        let (a0, b0, k0) = edges[incident[0]].unwrap();
        let (a1, b1, k1) = edges[incident[1]].unwrap();
        let x = if a0 == h { b0 } else { a0 };
        let y = if a1 == h { b1 } else { a1 };
        let kind = k0.compose(k1).toggled();
        edges[incident[0]] = Some((x, y, kind));
        edges[incident[1]] = None;
    }
    let mut edges: Vec<(usize, usize, EdgeKind)> = edges.into_iter().flatten().collect();

    // Colour change: every leg of an X spider picks up a Hadamard.
    let is_x = |i: usize| matches!(raw.nodes[i], NodeKind::X(_));
    for e in edges.iter_mut() {
        let flips = is_x(e.0) as u8 + is_x(e.1) as u8;
        if flips == 1 {
            e.2 = e.2.toggled();
        }
    }
    let is_spider = |i: usize| matches!(raw.nodes[i], NodeKind::Z(_) | NodeKind::X(_));

    let mut uf = UnionFind((0..n).collect());
    for &(a, b, k) in &edges {
        if k == EdgeKind::Plain && is_spider(a) && is_spider(b) {
            uf.union(a, b);
        }
    }

    let mut phases: BTreeMap<usize, Phase> = BTreeMap::new();
    for i in 0..n {
        if let NodeKind::Z(p) | NodeKind::X(p) = &raw.nodes[i] {
            let r = uf.find(i);
            let acc = phases.entry(r).or_default();
            *acc += p;
        }
    }

    let mut d = Diagram::new();
    let mut ids: BTreeMap<usize, VertexId> = BTreeMap::new();
    for i in 0..n {
        match &raw.nodes[i] {
            NodeKind::Boundary { io, position } => {
                ids.insert(i, d.add_boundary(*io, *position));
            }
            NodeKind::Z(_) | NodeKind::X(_) if uf.find(i) == i => {
                ids.insert(i, d.add_spider(phases.remove(&i).unwrap()));
            }
            _ => {}
        }
    }

    let mut boundary_used: BTreeSet<usize> = BTreeSet::new();
    for (a, b, k) in edges.drain(..) {
        let (ra, rb) = (
            if is_spider(a) { uf.find(a) } else { a },
            if is_spider(b) { uf.find(b) } else { b },
        );
        let (va, vb) = (ids[&ra], ids[&rb]);
        match (is_spider(a), is_spider(b)) {
            (true, true) => {
                if ra == rb {
                    if k == EdgeKind::Hadamard {
                        d.add_to_phase(va, &Phase::clifford(2));
                    }
                } else {
                    d.toggle_hadamard(va, vb);
                }
            }
            _ => {
                if a == b {
                    return Err(GraphError::BoundaryDegree(a));
                }
                for x in [a, b] {
                    if !is_spider(x) && !boundary_used.insert(x) {
                        return Err(GraphError::BoundaryDegree(x));
                    }
                }
                d.set_edge(va, vb, k);
            }
        }
    }
    for (i, node) in raw.nodes.iter().enumerate() {
        if matches!(node, NodeKind::Boundary { .. }) && !boundary_used.contains(&i) {
            return Err(GraphError::BoundaryDegree(i));
        }
    }
    Ok(d)
}

impl Diagram {
    /// The diagram as an unrestricted network, nodes in vertex-id order.
    pub fn to_network(&self) -> SpiderNetwork {
        let mut net = SpiderNetwork::new();
        let mut idx = BTreeMap::new();
        for v in self.vertices() {
            let node = match self.kind(v) {
                VertexKind::Boundary { io, position } => NodeKind::Boundary {
                    io: *io,
                    position: *position,
                },
                VertexKind::Spider(p) => NodeKind::Z(p.clone()),
            };
            idx.insert(v, net.add(node));
        }
        for (a, b, k) in self.edges() {
            net.connect(idx[&a], idx[&b], k);
        }
        net
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::validate;

    #[test]
    fn bare_wire() {
        let mut net = SpiderNetwork::new();
        let i = net.add(NodeKind::Boundary { io: Io::Input, position: 0 });
        let o = net.add(NodeKind::Boundary { io: Io::Output, position: 0 });
        net.wire(i, o);
        let d = to_graph_like(&net).unwrap();
        assert_eq!(d.num_spiders(), 0);
        let (i, o) = (d.inputs()[0], d.outputs()[0]);
        assert_eq!(d.edge(i, o), Some(EdgeKind::Plain));
        assert!(validate(&d).is_ok());
    }

    #[test]
    fn series_phases_fuse() {
        let mut net = SpiderNetwork::new();
        let i = net.add(NodeKind::Boundary { io: Io::Input, position: 0 });
        let a = net.add(NodeKind::Z(Phase::clifford(1)));
        let b = net.add(NodeKind::Z(Phase::clifford(1)));
        let o = net.add(NodeKind::Boundary { io: Io::Output, position: 0 });
        net.wire(i, a);
        net.wire(a, b);
        net.wire(b, o);
        let d = to_graph_like(&net).unwrap();
        assert_eq!(d.num_spiders(), 1);
        let s = d.spiders().next().unwrap();
        assert_eq!(*d.phase(s), Phase::clifford(2));
    }

    #[test]
    fn repeated_parameter_rejected() {
        let mut net = SpiderNetwork::new();
        net.add(NodeKind::Z(Phase::param("a")));
        net.add(NodeKind::X(Phase::param("a")));
        assert_eq!(
            to_graph_like(&net),
            Err(GraphError::RepeatedParameter("a".into()))
        );
    }

    #[test]
    fn hadamard_self_loop_adds_pi() {
        let mut net = SpiderNetwork::new();
        let o = net.add(NodeKind::Boundary { io: Io::Output, position: 0 });
        let a = net.add(NodeKind::Z(Phase::zero()));
        let b = net.add(NodeKind::Z(Phase::zero()));
        net.wire(a, o);
        net.wire(a, b);
        net.connect(a, b, EdgeKind::Hadamard);
        let d = to_graph_like(&net).unwrap();
        let s = d.spiders().next().unwrap();
        assert_eq!(*d.phase(s), Phase::clifford(2));
        assert_eq!(d.degree(s), 1);
    }

    #[test]
    fn hbox_between_x_spiders_becomes_plain_then_fuses() {
        // X -H- X: both legs toggled by colour change and the box, net Hadamard.
        let mut net = SpiderNetwork::new();
        let o0 = net.add(NodeKind::Boundary { io: Io::Output, position: 0 });
        let o1 = net.add(NodeKind::Boundary { io: Io::Output, position: 1 });
        let a = net.add(NodeKind::X(Phase::zero()));
        let h = net.add(NodeKind::HBox);
        let b = net.add(NodeKind::X(Phase::zero()));
        net.wire(a, o0);
        net.wire(a, h);
        net.wire(h, b);
        net.wire(b, o1);
        let d = to_graph_like(&net).unwrap();
        assert_eq!(d.num_spiders(), 2);
        let s: Vec<_> = d.spiders().collect();
        assert_eq!(d.edge(s[0], s[1]), Some(EdgeKind::Hadamard));
        assert!(validate(&d).is_ok());
    }

    #[test]
    fn bad_hbox_arity() {
        let mut net = SpiderNetwork::new();
        let h = net.add(NodeKind::HBox);
        let a = net.add(NodeKind::Z(Phase::zero()));
        net.wire(h, a);
        assert!(matches!(
            to_graph_like(&net),
            Err(GraphError::HBoxArity { legs: 1, .. })
        ));
    }
}
