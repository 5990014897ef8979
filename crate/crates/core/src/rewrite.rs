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

//! Simplification rules for graph-like diagrams and the fixpoint driver.
//!
//! Every rule preserves the linear map up to a nonzero constant once the
//! tracked parameter phase ([`Diagram::global_phase`]) is included. Each
//! application returns a [`RewriteEvent`] recording what changed, which is
//! enough to replay how original parameters end up on the surviving spiders.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::diagram::{find_gadgets, Diagram, EdgeKind, GadgetView, VertexId};
use crate::error::RewriteError;
use crate::phase::{ParamId, Phase};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Rule {
    LocalComp,
    Pivot,
    BoundaryPivot,
    GadgetPivot,
    GadgetFusion,
    GadgetIdFuse,
    ScalarRemoval,
}

/// Parameters folded into another spider by a fusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamMerge {
    pub absorbed: Vec<(ParamId, i8)>,
    pub survivor: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteEvent {
    pub rule: Rule,
    pub removed: Vec<VertexId>,
    pub touched: Vec<VertexId>,
    pub param_merge: Option<ParamMerge>,
    /// Phase of every parametrised spider this rewrite created or modified,
    /// including spiders whose parameters were all cancelled.
    pub param_updates: Vec<(VertexId, Phase)>,
    /// Parameters that disappeared into the global scalar.
    pub eliminated: Vec<ParamId>,
}

type Result<T> = std::result::Result<T, RewriteError>;

/// Snapshot of parametrised spiders taken before a rewrite, diffed afterwards.
struct Tracker {
    vertices: BTreeSet<VertexId>,
    params: BTreeMap<VertexId, Phase>,
}

impl Tracker {
    fn start(d: &Diagram) -> Self {
        Tracker {
            vertices: d.vertices().collect(),
            params: d
                .parametrised_spiders()
                .into_iter()
                .map(|v| (v, d.phase(v).clone()))
                .collect(),
        }
    }

    fn finish(
        self,
        d: &Diagram,
        rule: Rule,
        touched: BTreeSet<VertexId>,
        param_merge: Option<ParamMerge>,
        eliminated: Vec<ParamId>,
    ) -> RewriteEvent {
        let removed: Vec<VertexId> = self
            .vertices
            .iter()
            .copied()
            .filter(|&v| !d.contains(v))
            .collect();
        let mut param_updates = Vec::new();
        for v in d.spiders() {
            let now = d.phase(v);
            match self.params.get(&v) {
                Some(before) if before == now => {}
                Some(_) => param_updates.push((v, now.clone())),
                None if now.is_parametrised() => param_updates.push((v, now.clone())),
                None => {}
            }
        }
        RewriteEvent {
            rule,
            removed,
            touched: touched.into_iter().filter(|&v| d.contains(v)).collect(),
            param_merge,
            param_updates,
            eliminated,
        }
    }
}

/// Pivots along the edge `u`–`v`. Both must be internal with phase 0 or π.
/// Returns the union of their other neighbours.
fn raw_pivot(d: &mut Diagram, u: VertexId, v: VertexId) -> BTreeSet<VertexId> {
    let mut nu = d.neighbour_set(u);
    let mut nv = d.neighbour_set(v);
    nu.remove(&v);
    nv.remove(&u);
    let only_u: Vec<VertexId> = nu.difference(&nv).copied().collect();
    let only_v: Vec<VertexId> = nv.difference(&nu).copied().collect();
    let common: Vec<VertexId> = nu.intersection(&nv).copied().collect();

    for (xs, ys) in [(&only_u, &only_v), (&only_u, &common), (&only_v, &common)] {
        for &x in xs.iter() {
            for &y in ys.iter() {
                d.toggle_hadamard(x, y);
            }
        }
    }
    let pu = d.phase(u).clone();
    let pv = d.phase(v).clone();
    for &x in &only_u {
        d.add_to_phase(x, &pv);
    }
    for &x in &only_v {
        d.add_to_phase(x, &pu);
    }
    let both = pu + &pv + &Phase::clifford(2);
    for &x in &common {
        d.add_to_phase(x, &both);
    }
    d.remove_vertex(u);
    d.remove_vertex(v);
    nu.union(&nv).copied().collect()
}

/// Splits boundary wire `b`–`o` by a fresh phase-0 spider so that `b` no
/// longer touches `o`. The new spider is returned.
pub(crate) fn unfuse_boundary(d: &mut Diagram, b: VertexId, o: VertexId) -> VertexId {
    let kind = d.edge(b, o).expect("not adjacent");
    d.remove_edge(b, o);
    let w = d.add_spider(Phase::zero());
    d.set_edge(b, w, EdgeKind::Hadamard);
    d.set_edge(w, o, kind.toggled());
    w
}

/// Moves the phase of `v` onto a new gadget hanging off `v`.
/// Returns `(axis, leaf)`.
fn unfuse_gadget(d: &mut Diagram, v: VertexId) -> (VertexId, VertexId) {
    let phase = d.phase(v).clone();
    d.set_phase(v, Phase::zero());
    let axis = d.add_spider(Phase::zero());
    let leaf = d.add_spider(phase);
    d.set_edge(v, axis, EdgeKind::Hadamard);
    d.set_edge(axis, leaf, EdgeKind::Hadamard);
    (axis, leaf)
}

/// Gadget with axis phase π turned into axis phase 0 by negating the leaf.
/// The parameter-dependent factor this produces is tracked on the diagram.
fn normalise_axis(d: &mut Diagram, axis: VertexId, leaf: VertexId) {
    if d.phase(axis).quarter_turns() == 2 {
        let theta = d.phase(leaf).clone();
        d.add_global_phase(&theta);
        d.set_phase(leaf, -theta);
        d.set_phase(axis, Phase::zero());
    }
}

fn has_internal_clifford_neighbour(d: &Diagram, u: VertexId) -> bool {
    d.neighbours(u)
        .any(|w| d.is_internal(w) && d.phase(w).is_clifford())
}

/// Removes an internal spider with phase ±π/2 by local complementation of its
/// neighbourhood.
pub fn local_complement_simp(d: &mut Diagram, v: VertexId) -> Result<RewriteEvent> {
    let rule = Rule::LocalComp;
    if !d.is_spider(v) {
        return Err(RewriteError::na(rule, &[v], "not a spider"));
    }
    if !d.is_internal(v) {
        return Err(RewriteError::na(rule, &[v], "boundary spider"));
    }
    if !d.phase(v).is_proper_clifford() {
        return Err(RewriteError::na(rule, &[v], "phase is not ±π/2"));
    }
    let t = Tracker::start(d);
    let touched = local_complement_unchecked(d, v);
    Ok(t.finish(d, rule, touched, None, Vec::new()))
}

fn local_complement_unchecked(d: &mut Diagram, v: VertexId) -> BTreeSet<VertexId> {
    let nbrs: Vec<VertexId> = d.neighbours(v).collect();
    for (i, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[i + 1..] {
            d.toggle_hadamard(a, b);
        }
    }
    let delta = -d.phase(v).clone();
    for &a in &nbrs {
        d.add_to_phase(a, &delta);
    }
    d.remove_vertex(v);
    nbrs.into_iter().collect()
}

/// Removes two adjacent internal spiders with phases in {0, π}.
pub fn pivot_simp(d: &mut Diagram, u: VertexId, v: VertexId) -> Result<RewriteEvent> {
    let rule = Rule::Pivot;
    for x in [u, v] {
        if !d.is_spider(x) {
            return Err(RewriteError::na(rule, &[u, v], "not a spider"));
        }
        if !d.is_internal(x) {
            return Err(RewriteError::na(rule, &[u, v], "boundary spider"));
        }
        if !d.phase(x).is_pauli() {
            return Err(RewriteError::na(rule, &[u, v], "phase is not 0 or π"));
        }
    }
    if u == v || d.edge(u, v) != Some(EdgeKind::Hadamard) {
        return Err(RewriteError::na(rule, &[u, v], "not adjacent"));
    }
    let t = Tracker::start(d);
    let touched = raw_pivot(d, u, v);
    Ok(t.finish(d, rule, touched, None, Vec::new()))
}

/// Removes an internal 0/π spider `u` next to an internal parametrised spider
/// `w`. The phase of `w` moves onto a new gadget connected to the rest of the
/// neighbourhood of `u`.
pub fn gadget_pivot(d: &mut Diagram, u: VertexId, w: VertexId) -> Result<RewriteEvent> {
    let rule = Rule::GadgetPivot;
    if !d.is_spider(u) || !d.is_spider(w) {
        return Err(RewriteError::na(rule, &[u, w], "not a spider"));
    }
    if !d.is_internal(u) || !d.phase(u).is_pauli() {
        return Err(RewriteError::na(rule, &[u, w], "u must be internal with phase 0 or π"));
    }
    if d.is_gadget_axis(u) {
        return Err(RewriteError::na(rule, &[u, w], "u is already a gadget axis"));
    }
    if !d.is_internal(w) || !d.phase(w).is_parametrised() {
        return Err(RewriteError::na(rule, &[u, w], "w must be internal and parametrised"));
    }
    if d.edge(u, w) != Some(EdgeKind::Hadamard) {
        return Err(RewriteError::na(rule, &[u, w], "not adjacent"));
    }
    if has_internal_clifford_neighbour(d, u) {
        return Err(RewriteError::na(rule, &[u, w], "u has an internal Clifford neighbour"));
    }
    let t = Tracker::start(d);
    let (axis, leaf) = unfuse_gadget(d, w);
    let mut touched = raw_pivot(d, u, w);
    touched.insert(axis);
    touched.insert(leaf);
    Ok(t.finish(d, rule, touched, None, Vec::new()))
}

/// Pivots an internal 0/π spider `u` with a boundary spider `b`, after
/// splitting every open wire of `b` and, when `b` is not 0/π, moving its phase
/// onto a new gadget.
pub fn boundary_pivot(d: &mut Diagram, u: VertexId, b: VertexId) -> Result<RewriteEvent> {
    let rule = Rule::BoundaryPivot;
    if !d.is_spider(u) || !d.is_spider(b) {
        return Err(RewriteError::na(rule, &[u, b], "not a spider"));
    }
    if !d.is_internal(u) || !d.phase(u).is_pauli() {
        return Err(RewriteError::na(rule, &[u, b], "u must be internal with phase 0 or π"));
    }
    if !d.is_boundary_spider(b) {
        return Err(RewriteError::na(rule, &[u, b], "b is not a boundary spider"));
    }
    if d.edge(u, b) != Some(EdgeKind::Hadamard) {
        return Err(RewriteError::na(rule, &[u, b], "not adjacent"));
    }
    let t = Tracker::start(d);
    let mut touched = BTreeSet::new();
    for o in d.boundary_nodes_of(b) {
        touched.insert(unfuse_boundary(d, b, o));
    }
    if !d.phase(b).is_pauli() {
        let (axis, leaf) = unfuse_gadget(d, b);
        touched.insert(axis);
        touched.insert(leaf);
    }
    touched.extend(raw_pivot(d, u, b));
    Ok(t.finish(d, rule, touched, None, Vec::new()))
}

fn current_gadget(d: &Diagram, g: &GadgetView) -> Option<GadgetView> {
    if !d.contains(g.axis_spider) || !d.is_spider(g.axis_spider) {
        return None;
    }
    let leaf = d.gadget_leaf(g.axis_spider)?;
    if leaf != g.phase_spider {
        return None;
    }
    let mut neighbourhood = d.neighbour_set(g.axis_spider);
    neighbourhood.remove(&leaf);
    Some(GadgetView {
        axis_spider: g.axis_spider,
        phase_spider: leaf,
        neighbourhood,
    })
}

/// Fuses two gadgets with identical neighbourhoods into the first one.
pub fn gadget_fusion(d: &mut Diagram, g1: &GadgetView, g2: &GadgetView) -> Result<RewriteEvent> {
    let rule = Rule::GadgetFusion;
    let at = [g1.axis_spider, g2.axis_spider];
    let (Some(g1), Some(g2)) = (current_gadget(d, g1), current_gadget(d, g2)) else {
        return Err(RewriteError::na(rule, &at, "not a gadget"));
    };
    if g1.axis_spider == g2.axis_spider {
        return Err(RewriteError::na(rule, &at, "same gadget"));
    }
    if g1.neighbourhood != g2.neighbourhood {
        return Err(RewriteError::na(rule, &at, "neighbourhoods differ"));
    }
    let t = Tracker::start(d);
    if d.phase(g1.axis_spider) != d.phase(g2.axis_spider) {
        normalise_axis(d, g1.axis_spider, g1.phase_spider);
        normalise_axis(d, g2.axis_spider, g2.phase_spider);
    }
    let keep = d.phase(g1.phase_spider).clone();
    let absorbed = d.phase(g2.phase_spider).clone();
    let merge = (keep.is_parametrised() && absorbed.is_parametrised()).then(|| ParamMerge {
        absorbed: absorbed.terms().iter().map(|(p, &c)| (p.clone(), c)).collect(),
        survivor: g1.phase_spider,
    });
    d.remove_vertex(g2.phase_spider);
    d.remove_vertex(g2.axis_spider);
    d.set_phase(g1.phase_spider, keep + &absorbed);
    let touched = [g1.axis_spider, g1.phase_spider].into_iter().collect();
    Ok(t.finish(d, rule, touched, merge, Vec::new()))
}

/// Folds a gadget with a single neighbour into that neighbour's phase.
pub fn gadget_id_fuse(d: &mut Diagram, g: &GadgetView) -> Result<RewriteEvent> {
    let rule = Rule::GadgetIdFuse;
    let at = [g.axis_spider];
    let Some(g) = current_gadget(d, g) else {
        return Err(RewriteError::na(rule, &at, "not a gadget"));
    };
    if g.neighbourhood.len() != 1 {
        return Err(RewriteError::na(rule, &at, "gadget degree is not 1"));
    }
    let n = *g.neighbourhood.iter().next().unwrap();
    let t = Tracker::start(d);
    normalise_axis(d, g.axis_spider, g.phase_spider);
    let theta = d.phase(g.phase_spider).clone();
    let merge = (theta.is_parametrised() && d.phase(n).is_parametrised()).then(|| ParamMerge {
        absorbed: theta.terms().iter().map(|(p, &c)| (p.clone(), c)).collect(),
        survivor: n,
    });
    d.remove_vertex(g.phase_spider);
    d.remove_vertex(g.axis_spider);
    d.add_to_phase(n, &theta);
    Ok(t.finish(d, rule, [n].into_iter().collect(), merge, Vec::new()))
}

/// Removes isolated internal spiders and isolated gadgets, which only
/// contribute a scalar. An isolated spider with phase θ contributes `1 + e^{iθ}`;
/// when θ is parametrised that factor is not a phase and the parameter was
/// trivial.
pub fn remove_scalar_spiders(d: &mut Diagram) -> Vec<RewriteEvent> {
    let mut events = Vec::new();
    let isolated: Vec<VertexId> = d.spiders().filter(|&v| d.degree(v) == 0).collect();
    for v in isolated {
        let t = Tracker::start(d);
        let eliminated = d.phase(v).params().cloned().collect();
        d.remove_vertex(v);
        events.push(t.finish(d, Rule::ScalarRemoval, BTreeSet::new(), None, eliminated));
    }
    let lone: Vec<GadgetView> = find_gadgets(d)
        .into_iter()
        .filter(|g| g.neighbourhood.is_empty())
        .collect();
    for g in lone {
        let t = Tracker::start(d);
        normalise_axis(d, g.axis_spider, g.phase_spider);
        let eliminated = d.phase(g.phase_spider).params().cloned().collect();
        d.remove_vertex(g.phase_spider);
        d.remove_vertex(g.axis_spider);
        events.push(t.finish(d, Rule::ScalarRemoval, BTreeSet::new(), None, eliminated));
    }
    events
}

/// Boundary spider with phase ±π/2 behind a Hadamard on one of its open
/// wires. Such a decoration (S then H) is rewritten away: the Hadamard wires
/// are split off and, if that leaves the spider internal, it is removed by
/// local complementation. Reported as a [`Rule::LocalComp`] event.
fn normalise_boundary(d: &mut Diagram, b: VertexId) -> RewriteEvent {
    let t = Tracker::start(d);
    let mut touched = BTreeSet::new();
    for o in d.boundary_nodes_of(b) {
        if d.edge(b, o) == Some(EdgeKind::Hadamard) {
            touched.insert(unfuse_boundary(d, b, o));
        }
    }
    if d.is_internal(b) {
        touched.extend(local_complement_unchecked(d, b));
    }
    t.finish(d, Rule::LocalComp, touched, None, Vec::new())
}

fn needs_boundary_normalisation(d: &Diagram, b: VertexId) -> bool {
    d.is_boundary_spider(b)
        && d.phase(b).is_proper_clifford()
        && d
            .boundary_nodes_of(b)
            .into_iter()
            .any(|o| d.edge(b, o) == Some(EdgeKind::Hadamard))
}

/// How candidates are chosen when several rule applications are possible.
#[derive(Clone, Debug, Default)]
pub enum Schedule {
    /// Smallest vertex id first.
    #[default]
    Deterministic,
    /// Uniformly random candidate, reproducible from the seed.
    Seeded(u64),
}

struct Driver {
    rng: Option<ChaCha8Rng>,
}

impl Driver {
    fn pick<T: Clone>(&mut self, candidates: &[T]) -> Option<T> {
        match &mut self.rng {
            None => candidates.first().cloned(),
            Some(rng) => candidates.choose(rng).cloned(),
        }
    }
}

fn lc_candidates(d: &Diagram) -> Vec<VertexId> {
    d.spiders()
        .filter(|&v| d.is_internal(v) && d.phase(v).is_proper_clifford())
        .collect()
}

fn pivot_candidates(d: &Diagram) -> Vec<(VertexId, VertexId)> {
    let pauli_internal = |v: VertexId| d.is_internal(v) && d.phase(v).is_pauli();
    let mut out = Vec::new();
    for u in d.spiders().filter(|&u| pauli_internal(u)) {
        for v in d.neighbours(u) {
            if u < v && d.is_spider(v) && pauli_internal(v) {
                out.push((u, v));
            }
        }
    }
    out
}

fn pivot_source(d: &Diagram, u: VertexId) -> bool {
    d.is_internal(u)
        && d.phase(u).is_pauli()
        && !d.is_gadget_axis(u)
        && !has_internal_clifford_neighbour(d, u)
}

fn gadget_pivot_candidates(d: &Diagram) -> Vec<(VertexId, VertexId)> {
    let mut out = Vec::new();
    for u in d.spiders().filter(|&u| pivot_source(d, u)) {
        for w in d.neighbours(u) {
            if d.is_internal(w) && d.phase(w).is_parametrised() {
                out.push((u, w));
            }
        }
    }
    out
}

fn boundary_pivot_candidates(d: &Diagram) -> Vec<(VertexId, VertexId)> {
    let mut out = Vec::new();
    for u in d.spiders().filter(|&u| pivot_source(d, u)) {
        // 0/π boundary spiders first: they need no gadget unfusion.
        let mut bs: Vec<(u8, VertexId)> = d
            .neighbours(u)
            .filter(|&b| d.is_boundary_spider(b))
            .map(|b| {
                let p = d.phase(b);
                let rank = if p.is_pauli() {
                    0
                } else if p.is_clifford() {
                    1
                } else {
                    2
                };
                (rank, b)
            })
            .collect();
        bs.sort();
        if let Some(&(_, b)) = bs.first() {
            out.push((u, b));
        }
    }
    out
}

fn id_fuse_candidates(d: &Diagram) -> Vec<GadgetView> {
    find_gadgets(d)
        .into_iter()
        .filter(|g| g.neighbourhood.len() == 1)
        .collect()
}

fn fusion_candidates(d: &Diagram) -> Vec<(GadgetView, GadgetView)> {
    let mut by_nbhd: BTreeMap<BTreeSet<VertexId>, Vec<GadgetView>> = BTreeMap::new();
    for g in find_gadgets(d) {
        by_nbhd.entry(g.neighbourhood.clone()).or_default().push(g);
    }
    let mut out = Vec::new();
    for gs in by_nbhd.into_values() {
        for g in &gs[1..] {
            out.push((gs[0].clone(), g.clone()));
        }
    }
    out.sort_by_key(|(a, b)| (a.axis_spider, b.axis_spider));
    out
}

/// Rewrites `d` to a fixpoint of the rule set.
///
/// Each round exhausts, in order: local complementation, pivoting, gadget
/// pivots, boundary pivots (with boundary normalisation), single-neighbour
/// gadget fusion, gadget fusion and scalar removal. Rounds repeat until none
/// of them fires.
pub fn simplify(d: Diagram) -> (Diagram, Vec<RewriteEvent>) {
    simplify_with(d, Schedule::Deterministic)
}

pub fn simplify_with(mut d: Diagram, schedule: Schedule) -> (Diagram, Vec<RewriteEvent>) {
    let mut driver = Driver {
        rng: match schedule {
            Schedule::Deterministic => None,
            Schedule::Seeded(s) => Some(ChaCha8Rng::seed_from_u64(s)),
        },
    };
    let mut events = Vec::new();
    loop {
        let before = events.len();

        while let Some(v) = driver.pick(&lc_candidates(&d)) {
            events.push(local_complement_simp(&mut d, v).expect("lc candidate"));
        }
        while let Some((u, v)) = driver.pick(&pivot_candidates(&d)) {
            events.push(pivot_simp(&mut d, u, v).expect("pivot candidate"));
        }
        while let Some((u, w)) = driver.pick(&gadget_pivot_candidates(&d)) {
            events.push(gadget_pivot(&mut d, u, w).expect("gadget pivot candidate"));
        }
        while let Some((u, b)) = driver.pick(&boundary_pivot_candidates(&d)) {
            events.push(boundary_pivot(&mut d, u, b).expect("boundary pivot candidate"));
        }
        loop {
            let bs: Vec<VertexId> = d
                .spiders()
                .filter(|&b| needs_boundary_normalisation(&d, b))
                .collect();
            let Some(b) = driver.pick(&bs) else { break };
            events.push(normalise_boundary(&mut d, b));
        }
        while let Some(g) = driver.pick(&id_fuse_candidates(&d)) {
            events.push(gadget_id_fuse(&mut d, &g).expect("id fuse candidate"));
        }
        while let Some((g1, g2)) = driver.pick(&fusion_candidates(&d)) {
            events.push(gadget_fusion(&mut d, &g1, &g2).expect("fusion candidate"));
        }
        events.extend(remove_scalar_spiders(&mut d));

        if events.len() == before {
            break;
        }
    }
    (d, events)
}

/// Structural conditions of the terminal form that `simplify` reaches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TerminalViolation {
    /// Internal Clifford spider that is not a gadget axis.
    InternalClifford(VertexId),
    GadgetDegree { axis: VertexId, degree: usize },
    SharedNeighbourhood(VertexId, VertexId),
    /// A boundary decoration outside {S^k, H, Z·H}.
    BoundaryDecoration(VertexId),
    Malformed(String),
}

pub fn terminal_violations(d: &Diagram) -> Vec<TerminalViolation> {
    let mut out: Vec<TerminalViolation> = crate::diagram::validate(d)
        .violations
        .into_iter()
        .map(|v| TerminalViolation::Malformed(v.to_string()))
        .collect();
    for v in d.spiders() {
        if d.is_internal(v) && d.phase(v).is_clifford() && !d.is_gadget_axis(v) {
            out.push(TerminalViolation::InternalClifford(v));
        }
        if needs_boundary_normalisation(d, v) {
            out.push(TerminalViolation::BoundaryDecoration(v));
        }
    }
    let gadgets = find_gadgets(d);
    for g in &gadgets {
        if g.neighbourhood.len() < 2 {
            out.push(TerminalViolation::GadgetDegree {
                axis: g.axis_spider,
                degree: g.neighbourhood.len(),
            });
        }
    }
    for (i, a) in gadgets.iter().enumerate() {
        for b in &gadgets[i + 1..] {
            if a.neighbourhood == b.neighbourhood {
                out.push(TerminalViolation::SharedNeighbourhood(
                    a.axis_spider,
                    b.axis_spider,
                ));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Io;

    fn star(centre: Phase, leaves: usize) -> (Diagram, VertexId, Vec<VertexId>) {
        let mut d = Diagram::new();
        let c = d.add_spider(centre);
        let mut ls = Vec::new();
        for i in 0..leaves {
            let o = d.add_boundary(Io::Output, i);
            let s = d.add_spider(Phase::zero());
            d.set_edge(s, o, EdgeKind::Plain);
            d.set_edge(c, s, EdgeKind::Hadamard);
            ls.push(s);
        }
        (d, c, ls)
    }

    #[test]
    fn lc_on_isolated_spider() {
        let mut d = Diagram::new();
        let v = d.add_spider(Phase::clifford(1));
        let e = local_complement_simp(&mut d, v).unwrap();
        assert_eq!(e.removed, vec![v]);
        assert_eq!(d.num_vertices(), 0);
    }

    #[test]
    fn lc_connects_neighbours() {
        let (mut d, c, ls) = star(Phase::clifford(1), 2);
        local_complement_simp(&mut d, c).unwrap();
        assert_eq!(d.edge(ls[0], ls[1]), Some(EdgeKind::Hadamard));
        assert_eq!(*d.phase(ls[0]), Phase::clifford(-1));
        assert_eq!(*d.phase(ls[1]), Phase::clifford(-1));
    }

    #[test]
    fn lc_rejects_bad_inputs() {
        let (mut d, c, ls) = star(Phase::clifford(2), 2);
        assert!(local_complement_simp(&mut d, c).is_err());
        d.set_phase(ls[0], Phase::clifford(1));
        assert!(local_complement_simp(&mut d, ls[0]).is_err());
        d.set_phase(c, Phase::param("a"));
        assert!(local_complement_simp(&mut d, c).is_err());
    }

    #[test]
    fn pivot_isolated_pair() {
        let mut d = Diagram::new();
        let u = d.add_spider(Phase::zero());
        let v = d.add_spider(Phase::zero());
        d.set_edge(u, v, EdgeKind::Hadamard);
        pivot_simp(&mut d, u, v).unwrap();
        assert_eq!(d.num_vertices(), 0);
    }

    #[test]
    fn gadget_fusion_flips_pi_axis() {
        let (mut d, _, ls) = star(Phase::zero(), 2);
        let mut gs = Vec::new();
        for (name, axis_phase) in [("a", 0), ("b", 2)] {
            let axis = d.add_spider(Phase::clifford(axis_phase));
            let leaf = d.add_spider(Phase::param(name));
            d.set_edge(axis, leaf, EdgeKind::Hadamard);
            for &l in &ls {
                d.set_edge(axis, l, EdgeKind::Hadamard);
            }
            gs.push(GadgetView {
                axis_spider: axis,
                phase_spider: leaf,
                neighbourhood: ls.iter().copied().collect(),
            });
        }
        let e = gadget_fusion(&mut d, &gs[0], &gs[1]).unwrap();
        let expected = Phase::from_terms(0, [("a".into(), 1), ("b".into(), -1)]);
        assert_eq!(*d.phase(gs[0].phase_spider), expected);
        assert_eq!(d.global_phase().get(&ParamId::from("b")), Some(&1));
        assert_eq!(e.removed, vec![gs[1].axis_spider, gs[1].phase_spider]);
        let merge = e.param_merge.unwrap();
        assert_eq!(merge.absorbed, vec![(ParamId::from("b"), -1)]);
        assert_eq!(find_gadgets(&d).len(), 1);
    }

    #[test]
    fn gadget_fusion_requires_same_neighbourhood() {
        let (mut d, _, ls) = star(Phase::zero(), 3);
        let mut gs = Vec::new();
        for (k, nb) in [(0, &ls[..2]), (1, &ls[1..])] {
            let axis = d.add_spider(Phase::zero());
            let leaf = d.add_spider(Phase::param(format!("a{k}").as_str()));
            d.set_edge(axis, leaf, EdgeKind::Hadamard);
            for &l in nb {
                d.set_edge(axis, l, EdgeKind::Hadamard);
            }
            gs.push(find_gadgets(&d).into_iter().find(|g| g.axis_spider == axis).unwrap());
        }
        assert!(matches!(
            gadget_fusion(&mut d, &gs[0], &gs[1]),
            Err(RewriteError::NotApplicable { rule: Rule::GadgetFusion, .. })
        ));
    }

    #[test]
    fn id_fuse_moves_phase_to_neighbour() {
        let (mut d, _, ls) = star(Phase::zero(), 1);
        let axis = d.add_spider(Phase::zero());
        let leaf = d.add_spider(Phase::clifford(2) + &Phase::param("b"));
        d.set_edge(axis, leaf, EdgeKind::Hadamard);
        d.set_edge(axis, ls[0], EdgeKind::Hadamard);
        let g = find_gadgets(&d).pop().unwrap();
        let e = gadget_id_fuse(&mut d, &g).unwrap();
        assert_eq!(*d.phase(ls[0]), Phase::clifford(2) + &Phase::param("b"));
        assert!(e.param_merge.is_none());
    }

    #[test]
    fn scalar_removal() {
        let mut d = Diagram::new();
        d.add_spider(Phase::zero());
        let ev = remove_scalar_spiders(&mut d);
        assert_eq!(ev.len(), 1);
        assert_eq!(d.num_vertices(), 0);

        let axis = d.add_spider(Phase::zero());
        let leaf = d.add_spider(Phase::param("a"));
        d.set_edge(axis, leaf, EdgeKind::Hadamard);
        let ev = remove_scalar_spiders(&mut d);
        assert_eq!(ev.len(), 1);
        assert_eq!(ev[0].eliminated, vec![ParamId::from("a")]);
        assert_eq!(d.num_vertices(), 0);

        let (mut clean, _, _) = star(Phase::param("a"), 2);
        assert!(remove_scalar_spiders(&mut clean).is_empty());
    }

    #[test]
    fn simplify_clifford_star_has_no_internal_spiders() {
        let (d, _, _) = star(Phase::zero(), 3);
        let (out, _) = simplify(d);
        assert!(out.spiders().all(|v| out.is_boundary_spider(v)));
        assert!(terminal_violations(&out).is_empty());
    }
}
