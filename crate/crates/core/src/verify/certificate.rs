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

//! Structural certificates that no two parameters of a terminal diagram can
//! be merged.
//!
//! Every parametrised spider is read as a `|+_α⟩` state plugged into a graph
//! state through a local Clifford, its *leg*. Two parameters can only be
//! merged if their legs carry a weight-2 `Z⊗Z` stabiliser, which in a graph
//! state happens in exactly two situations:
//!
//! 1. the legs are adjacent, neither has another neighbour, and exactly one
//!    carries a Hadamard;
//! 2. the legs are not adjacent, have the same neighbourhood and both carry a
//!    Hadamard.
//!
//! A gadget leaf is the leg of its axis vertex (with a Hadamard); a boundary
//! spider is a pendant vertex attached to that spider (with a Hadamard); any
//! other spider is its own leg with no decoration. A π on a gadget axis is a
//! Pauli X on the leg and does not affect the stabiliser pattern.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::diagram::{find_gadgets, Diagram, VertexId};
use crate::error::VerifyError;

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ZzCondition {
    /// Adjacent legs without other neighbours, decorations `I⊗H` or `H⊗I`.
    Adjacent,
    /// Non-adjacent legs with identical neighbourhoods, both `H`.
    SameNeighbourhood,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Leg {
    spider: VertexId,
    /// Graph vertex of the leg, `None` for a virtual pendant.
    node: Option<VertexId>,
    hadamard: bool,
    neighbourhood: BTreeSet<VertexId>,
}

fn legs(d: &Diagram) -> Vec<Leg> {
    d.parametrised_spiders()
        .into_iter()
        .map(|s| {
            if let Some(axis) = d.gadget_axis_of(s) {
                let mut nb = d.neighbour_set(axis);
                nb.remove(&s);
                Leg {
                    spider: s,
                    node: Some(axis),
                    hadamard: true,
                    neighbourhood: nb,
                }
            } else if d.is_boundary_spider(s) {
                Leg {
                    spider: s,
                    node: None,
                    hadamard: true,
                    neighbourhood: [s].into_iter().collect(),
                }
            } else {
                Leg {
                    spider: s,
                    node: Some(s),
                    hadamard: false,
                    neighbourhood: d.neighbour_set(s),
                }
            }
        })
        .collect()
}

fn check_terminal(d: &Diagram) -> Result<(), VerifyError> {
    for v in d.spiders() {
        if d.is_internal(v) && d.phase(v).is_clifford() && !d.is_gadget_axis(v) {
            return Err(VerifyError::NotTerminalForm(format!(
                "internal Clifford spider {v} is not a gadget axis"
            )));
        }
    }
    Ok(())
}

fn adjacent(a: &Leg, b: &Leg) -> bool {
    match (a.node, b.node) {
        (Some(x), _) if b.neighbourhood.contains(&x) => true,
        (_, Some(y)) if a.neighbourhood.contains(&y) => true,
        _ => false,
    }
}

/// Two parametrised spiders, smaller id first, and the condition they meet.
pub type ZzPair = ((VertexId, VertexId), ZzCondition);

/// Pairs of parametrised spiders whose legs admit a `Z⊗Z` stabiliser.
/// Each pair is reported once, smaller id first.
pub fn zz_certificate(d: &Diagram) -> Result<Vec<ZzPair>, VerifyError> {
    check_terminal(d)?;
    let legs = legs(d);
    let mut out = Vec::new();
    for (i, a) in legs.iter().enumerate() {
        for b in &legs[i + 1..] {
            let cond = if adjacent(a, b) {
                let only = |x: &Leg, y: &Leg| x.neighbourhood.len() == 1 && y.node.is_some_and(|n| x.neighbourhood.contains(&n));
                (only(a, b) && only(b, a) && a.hadamard != b.hadamard).then_some(ZzCondition::Adjacent)
            } else {
                (a.neighbourhood == b.neighbourhood && a.hadamard && b.hadamard)
                    .then_some(ZzCondition::SameNeighbourhood)
            };
            if let Some(c) = cond {
                let pair = (a.spider.min(b.spider), a.spider.max(b.spider));
                out.push((pair, c));
            }
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CertificateFailure {
    GadgetDegree { axis: VertexId, degree: usize },
    SharedNeighbourhood { first: VertexId, second: VertexId },
    ZzPair { first: VertexId, second: VertexId, condition: ZzCondition },
    IsolatedParameter(VertexId),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub passes: bool,
    pub failures: Vec<CertificateFailure>,
}

/// Passes when every gadget has at least two neighbours, no two gadgets share
/// a neighbourhood, no pair of legs carries a `Z⊗Z` stabiliser and no
/// parametrised spider is isolated. The conditions are sufficient for
/// minimality, not necessary.
pub fn optimality_certificate(d: &Diagram) -> Result<CertificateReport, VerifyError> {
    let zz = zz_certificate(d)?;
    let mut failures = Vec::new();
    let gadgets = find_gadgets(d);
    for g in &gadgets {
        if g.neighbourhood.len() < 2 {
            failures.push(CertificateFailure::GadgetDegree {
                axis: g.axis_spider,
                degree: g.neighbourhood.len(),
            });
        }
    }
    for (i, a) in gadgets.iter().enumerate() {
        for b in &gadgets[i + 1..] {
            if a.neighbourhood == b.neighbourhood {
                failures.push(CertificateFailure::SharedNeighbourhood {
                    first: a.axis_spider,
                    second: b.axis_spider,
                });
            }
        }
    }
    for ((first, second), condition) in zz {
        failures.push(CertificateFailure::ZzPair { first, second, condition });
    }
    for v in d.parametrised_spiders() {
        if d.degree(v) == 0 {
            failures.push(CertificateFailure::IsolatedParameter(v));
        }
    }
    Ok(CertificateReport {
        passes: failures.is_empty(),
        failures,
    })
}
