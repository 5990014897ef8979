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

//! Reduction maps and in-place phase teleportation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::circuit::{circuit_to_diagram, Circuit, Gate};
use crate::diagram::{Diagram, VertexId};
use crate::error::ReductionError;
use crate::phase::{ParamId, Phase};
use crate::rewrite::{simplify_with, RewriteEvent, Schedule};

/// `β = P·α + c·π/2`: new parameters as signed sums of original ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionMap {
    pub params_in: Vec<ParamId>,
    pub new_param_names: Vec<ParamId>,
    /// `l × k`, entries in `{-1, 0, 1}`.
    pub p_matrix: Vec<Vec<i8>>,
    /// Per-row constant in units of π/2, in `0..4`.
    pub constants: Vec<u8>,
    /// Original parameters that only affected the global scalar.
    pub eliminated: Vec<ParamId>,
}

impl ReductionMap {
    /// The map that keeps every parameter as is.
    pub fn identity(params: &[ParamId]) -> Self {
        let k = params.len();
        ReductionMap {
            params_in: params.to_vec(),
            new_param_names: params.to_vec(),
            p_matrix: (0..k)
                .map(|i| (0..k).map(|j| (i == j) as i8).collect())
                .collect(),
            constants: vec![0; k],
            eliminated: Vec::new(),
        }
    }

    pub fn params_out(&self) -> usize {
        self.new_param_names.len()
    }

    /// Row `i` as an expression over the original parameters.
    pub fn row_expr(&self, i: usize) -> Phase {
        Phase::from_terms(
            self.constants[i] as i64,
            self.params_in
                .iter()
                .zip(&self.p_matrix[i])
                .map(|(p, &c)| (p.clone(), c)),
        )
    }

    /// Checks the shape and the parsimony conditions: entries in {-1,0,1},
    /// at most one nonzero per column and none per row missing.
    pub fn check(&self) -> Result<(), ReductionError> {
        let k = self.params_in.len();
        let l = self.new_param_names.len();
        if self.p_matrix.len() != l || self.constants.len() != l {
            return Err(ReductionError::Malformed(format!(
                "{l} names, {} rows, {} constants",
                self.p_matrix.len(),
                self.constants.len()
            )));
        }
        for (i, row) in self.p_matrix.iter().enumerate() {
            if row.len() != k {
                return Err(ReductionError::Malformed(format!("row {i} has {} entries, expected {k}", row.len())));
            }
            if row.iter().any(|c| !(-1..=1).contains(c)) {
                return Err(ReductionError::Malformed(format!("row {i} has an entry outside {{-1,0,1}}")));
            }
            if row.iter().all(|&c| c == 0) {
                return Err(ReductionError::Malformed(format!("row {i} is zero")));
            }
        }
        for j in 0..k {
            if self.p_matrix.iter().filter(|r| r[j] != 0).count() > 1 {
                return Err(ReductionError::Malformed(format!(
                    "parameter {} is used by more than one row",
                    self.params_in[j]
                )));
            }
        }
        Ok(())
    }

    pub fn to_report(&self) -> MapReport {
        MapReport {
            params_in: self.params_in.clone(),
            params_out: self.new_param_names.clone(),
            rows: (0..self.params_out())
                .map(|i| MapRow {
                    name: self.new_param_names[i].clone(),
                    terms: self
                        .params_in
                        .iter()
                        .zip(&self.p_matrix[i])
                        .filter(|(_, &c)| c != 0)
                        .map(|(p, &c)| (p.clone(), c))
                        .collect(),
                    const_pi_over_2: self.constants[i],
                })
                .collect(),
        }
    }

    pub fn from_report(r: &MapReport) -> Result<Self, ReductionError> {
        let index: BTreeMap<&ParamId, usize> =
            r.params_in.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut p_matrix = Vec::new();
        for row in &r.rows {
            let mut entries = vec![0i8; r.params_in.len()];
            for (p, c) in &row.terms {
                let j = *index
                    .get(p)
                    .ok_or_else(|| ReductionError::Malformed(format!("unknown parameter {p} in row {}", row.name)))?;
                entries[j] = *c;
            }
            p_matrix.push(entries);
        }
        let used: BTreeSet<usize> = p_matrix
            .iter()
            .flat_map(|row| row.iter().enumerate().filter(|(_, &c)| c != 0).map(|(j, _)| j))
            .collect();
        let m = ReductionMap {
            params_in: r.params_in.clone(),
            new_param_names: r.rows.iter().map(|row| row.name.clone()).collect(),
            p_matrix,
            constants: r.rows.iter().map(|row| row.const_pi_over_2 % 4).collect(),
            eliminated: (0..r.params_in.len())
                .filter(|j| !used.contains(j))
                .map(|j| r.params_in[j].clone())
                .collect(),
        };
        if m.new_param_names != r.params_out {
            return Err(ReductionError::Malformed("params_out does not match the row names".into()));
        }
        m.check()?;
        Ok(m)
    }
}

impl fmt::Display for ReductionMap {
    /// One line per row, e.g. `u0 = t0 - t2 + pi`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.params_out() {
            writeln!(f, "{} = {}", self.new_param_names[i], self.row_expr(i))?;
        }
        Ok(())
    }
}

/// Serialisable form of a [`ReductionMap`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapReport {
    pub params_in: Vec<ParamId>,
    pub params_out: Vec<ParamId>,
    pub rows: Vec<MapRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapRow {
    pub name: ParamId,
    pub terms: Vec<(ParamId, i8)>,
    pub const_pi_over_2: u8,
}

/// Replays `events` from `initial` and reads off how the original parameters
/// are combined on the surviving spiders.
///
/// Rows follow the position of their first parameter in `original_params`;
/// row names are the ids of the surviving spiders (`v12`, ...).
pub fn extract_reduction(
    initial: &Diagram,
    events: &[RewriteEvent],
    original_params: &[ParamId],
) -> Result<ReductionMap, ReductionError> {
    let bad = |m: String| ReductionError::InconsistentProvenance(m);
    let known: BTreeSet<&ParamId> = original_params.iter().collect();
    let mut state: BTreeMap<VertexId, Phase> = initial
        .parametrised_spiders()
        .into_iter()
        .map(|v| (v, initial.phase(v).clone()))
        .collect();
    let mut eliminated: BTreeSet<ParamId> = BTreeSet::new();

    for (n, e) in events.iter().enumerate() {
        for v in &e.removed {
            state.remove(v);
        }
        for (v, ph) in &e.param_updates {
            if ph.is_parametrised() {
                state.insert(*v, ph.clone());
            } else {
                state.remove(v);
            }
        }
        eliminated.extend(e.eliminated.iter().cloned());
        if let Some(m) = &e.param_merge {
            let Some(surv) = state.get(&m.survivor) else {
                return Err(bad(format!("event {n}: merge survivor {} is not parametrised", m.survivor)));
            };
            for (id, sign) in &m.absorbed {
                if surv.terms().get(id) != Some(sign) {
                    return Err(bad(format!("event {n}: {id} not absorbed into {}", m.survivor)));
                }
            }
        }
    }

    let mut owner: BTreeMap<&ParamId, VertexId> = BTreeMap::new();
    for (v, ph) in &state {
        for id in ph.params() {
            if !known.contains(id) {
                return Err(bad(format!("unknown parameter {id} on {v}")));
            }
            if owner.insert(id, *v).is_some() {
                return Err(bad(format!("parameter {id} on two spiders")));
            }
        }
    }
    for id in &eliminated {
        if owner.contains_key(id) {
            return Err(bad(format!("parameter {id} eliminated but still present")));
        }
    }
    for id in original_params {
        if !owner.contains_key(id) && !eliminated.contains(id) {
            return Err(bad(format!("parameter {id} vanished without being eliminated")));
        }
    }

    let position: BTreeMap<&ParamId, usize> =
        original_params.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut rows: Vec<(usize, VertexId, &Phase)> = state
        .iter()
        .map(|(v, ph)| (ph.params().map(|p| position[p]).min().unwrap(), *v, ph))
        .collect();
    rows.sort_by_key(|&(pos, v, _)| (pos, v));

    let map = ReductionMap {
        params_in: original_params.to_vec(),
        new_param_names: rows.iter().map(|(_, v, _)| ParamId::new(v.to_string())).collect(),
        p_matrix: rows
            .iter()
            .map(|(_, _, ph)| {
                original_params
                    .iter()
                    .map(|p| ph.terms().get(p).copied().unwrap_or(0))
                    .collect()
            })
            .collect(),
        constants: rows.iter().map(|(_, _, ph)| ph.quarter_turns()).collect(),
        eliminated: original_params
            .iter()
            .filter(|p| eliminated.contains(*p))
            .cloned()
            .collect(),
    };
    map.check().map_err(|e| bad(e.to_string()))?;
    Ok(map)
}

/// Simplifies the circuit's diagram and applies the discovered parameter
/// merges to the circuit itself.
///
/// Each row keeps the gate of its earliest parameter, renamed `u0, u1, ...`;
/// the other gates of the row and gates of eliminated parameters are deleted.
/// The row is scaled so the kept parameter has coefficient +1, and constants
/// are zero.
pub fn phase_teleport(c: &Circuit) -> Result<(Circuit, ReductionMap), ReductionError> {
    phase_teleport_with(c, Schedule::Deterministic)
}

pub fn phase_teleport_with(c: &Circuit, schedule: Schedule) -> Result<(Circuit, ReductionMap), ReductionError> {
    let params = c.params();
    let initial = circuit_to_diagram(c)?;
    let (_, events) = simplify_with(initial.clone(), schedule);
    let raw = extract_reduction(&initial, &events, &params)?;

    let mut rename: BTreeMap<ParamId, ParamId> = BTreeMap::new();
    let mut p_matrix = Vec::new();
    let mut names = Vec::new();
    for (i, row) in raw.p_matrix.iter().enumerate() {
        let rep = row.iter().position(|&x| x != 0).expect("nonzero row");
        let sign = row[rep];
        let name = ParamId::new(format!("u{i}"));
        rename.insert(params[rep].clone(), name.clone());
        names.push(name);
        p_matrix.push(row.iter().map(|&x| x * sign).collect());
    }
    let gates = c
        .gates
        .iter()
        .filter_map(|g| match g {
            Gate::RzParam(q, p) => rename.get(p).map(|n| Gate::RzParam(*q, n.clone())),
            other => Some(other.clone()),
        })
        .collect();
    let out = Circuit {
        n_qubits: c.n_qubits,
        gates,
    };
    let map = ReductionMap {
        params_in: params,
        new_param_names: names,
        constants: vec![0; p_matrix.len()],
        p_matrix,
        eliminated: raw.eliminated,
    };
    Ok((out, map))
}
