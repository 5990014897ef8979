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

//! Affine-with-phases form of Clifford states.
//!
//! A Clifford state is `Σ_{Ax=b} i^{l·x} (-1)^{Σ_{(j,k)∈Q} x_j x_k} |x⟩` for a
//! GF(2) system `Ax = b`, a linear phase `l` (mod 4) and quadratic pairs `Q`.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;
use serde::Serialize;

use crate::diagram::{Diagram, EdgeKind, VertexId};
use crate::error::VerifyError;
use crate::phase::Phase;
use crate::rewrite::{local_complement_simp, pivot_simp, unfuse_boundary};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct APForm {
    /// Number of qubits (output wires).
    pub n: usize,
    /// Rows over the `n` wire variables, in reduced row echelon form.
    pub a_matrix: Vec<Vec<u8>>,
    pub b_vector: Vec<u8>,
    /// Per-wire coefficient of `x_j` in units of π/2.
    pub linear_phase: Vec<u8>,
    /// Pairs `(j, k)`, `j < k`, each contributing `(-1)^{x_j x_k}`.
    pub quadratic_pairs: BTreeSet<(usize, usize)>,
}

impl APForm {
    /// Dense amplitudes, little-endian over the output wires.
    pub fn reconstruct(&self) -> Vec<Complex64> {
        let i = Complex64::new(0.0, 1.0);
        let rows: Vec<u64> = self.a_matrix.iter().map(|r| to_mask(r)).collect();
        (0..1u64 << self.n)
            .map(|x| {
                let sat = rows
                    .iter()
                    .zip(&self.b_vector)
                    .all(|(&r, &b)| (r & x).count_ones() as u8 % 2 == b);
                if !sat {
                    return Complex64::new(0.0, 0.0);
                }
                let lin: u32 = (0..self.n)
                    .filter(|j| x >> j & 1 == 1)
                    .map(|j| self.linear_phase[j] as u32)
                    .sum();
                let quad = self
                    .quadratic_pairs
                    .iter()
                    .filter(|&&(j, k)| x >> j & 1 == 1 && x >> k & 1 == 1)
                    .count();
                let sign = if quad % 2 == 0 { 1.0 } else { -1.0 };
                i.powu(lin % 4) * sign
            })
            .collect()
    }
}

fn to_mask(row: &[u8]) -> u64 {
    row.iter()
        .enumerate()
        .filter(|(_, &v)| v != 0)
        .fold(0, |m, (j, _)| m | 1 << j)
}

/// Reduced row echelon form of `[rows | rhs]`. Zero rows are dropped.
/// Returns `None` if the system is inconsistent.
fn rref(mut rows: Vec<(u64, u8)>, n: usize) -> Option<Vec<(u64, u8)>> {
    let mut pivot_row = 0;
    for col in 0..n {
        let bit = 1u64 << col;
        let Some(p) = (pivot_row..rows.len()).find(|&r| rows[r].0 & bit != 0) else {
            continue;
        };
        rows.swap(pivot_row, p);
        let (pr, pb) = rows[pivot_row];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != pivot_row && row.0 & bit != 0 {
                row.0 ^= pr;
                row.1 ^= pb;
            }
        }
        pivot_row += 1;
    }
    if rows[pivot_row..].iter().any(|&(m, b)| m == 0 && b == 1) {
        return None;
    }
    rows.truncate(pivot_row);
    Some(rows)
}

/// Brings the state into a form where every boundary wire hangs off its
/// spider by a plain edge, then removes internal spiders by local
/// complementation and pivoting until none can be removed.
fn two_layer_form(d: &Diagram) -> Diagram {
    let mut g = d.clone();
    for o in g.outputs() {
        let x = g.neighbours(o).next().expect("boundary degree checked");
        if g.is_boundary_node(x) {
            let kind = g.edge(o, x).unwrap();
            g.remove_edge(o, x);
            let s = g.add_spider(Phase::zero());
            g.set_edge(o, s, kind);
            g.set_edge(s, x, EdgeKind::Plain);
        } else if g.edge(o, x) == Some(EdgeKind::Hadamard) {
            unfuse_boundary(&mut g, x, o);
        }
    }
    loop {
        let lc = g
            .spiders()
            .find(|&v| g.is_internal(v) && g.phase(v).is_proper_clifford());
        if let Some(v) = lc {
            local_complement_simp(&mut g, v).expect("candidate");
            continue;
        }
        let pauli = |v: VertexId| g.is_internal(v) && g.phase(v).is_pauli();
        let pair = g
            .spiders()
            .filter(|&u| pauli(u))
            .find_map(|u| g.neighbours(u).find(|&v| pauli(v)).map(|v| (u, v)));
        match pair {
            Some((u, v)) => {
                pivot_simp(&mut g, u, v).expect("candidate");
            }
            None => break,
        }
    }
    g
}

/// Decomposes a Clifford state diagram (no inputs, no parameters).
pub fn ap_form(d: &Diagram) -> Result<APForm, VerifyError> {
    if !d.inputs().is_empty() {
        return Err(VerifyError::NotClifford("diagram has inputs"));
    }
    if d.num_params() > 0 || !d.global_phase().is_empty() || !d.parametrised_spiders().is_empty() {
        return Err(VerifyError::NotClifford("diagram is parametrised"));
    }
    let n = d.outputs().len();
    if n > 63 {
        return Err(VerifyError::TooLarge { wires: n, max: 63 });
    }
    let g = two_layer_form(d);
    let outputs = g.outputs();

    // Wire variable of each boundary spider: its smallest output position.
    let mut rep: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut rows: Vec<(u64, u8)> = Vec::new();
    for (j, &o) in outputs.iter().enumerate() {
        let s = g.neighbours(o).next().unwrap();
        match rep.get(&s) {
            Some(&r) => rows.push((1 << r | 1 << j, 0)),
            None => {
                rep.insert(s, j);
            }
        }
    }
    let mut linear_phase = vec![0u8; n];
    let mut quadratic_pairs = BTreeSet::new();
    for (&s, &j) in &rep {
        linear_phase[j] = g.phase(s).quarter_turns();
        for t in g.neighbours(s) {
            if let Some(&k) = rep.get(&t) {
                if j < k {
                    quadratic_pairs.insert((j, k));
                }
            }
        }
    }
    for u in g.spiders().filter(|&u| g.is_internal(u)) {
        let p = g.phase(u);
        if !p.is_pauli() {
            return Err(VerifyError::NotClifford("internal spider left after reduction"));
        }
        let mut mask = 0u64;
        for t in g.neighbours(u) {
            let Some(&k) = rep.get(&t) else {
                return Err(VerifyError::NotClifford("internal spiders left adjacent"));
            };
            mask |= 1 << k;
        }
        let parity = p.quarter_turns() / 2;
        if mask == 0 && parity == 1 {
            return Err(VerifyError::ZeroState);
        }
        if mask != 0 {
            rows.push((mask, parity));
        }
    }
    let rows = rref(rows, n).ok_or(VerifyError::ZeroState)?;
    Ok(APForm {
        n,
        a_matrix: rows
            .iter()
            .map(|&(m, _)| (0..n).map(|j| (m >> j & 1) as u8).collect())
            .collect(),
        b_vector: rows.iter().map(|&(_, b)| b).collect(),
        linear_phase,
        quadratic_pairs,
    })
}
