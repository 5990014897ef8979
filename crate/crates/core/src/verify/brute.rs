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

//! Exhaustive search for the smallest in-place parsimonious reduction.
//!
//! Candidates keep one representative gate per group of parameters and
//! delete the others; the representative takes the signed sum of its group.
//! Constants are never needed for in-place reductions, so none are tried.

use rayon::prelude::*;

use crate::circuit::{Circuit, Gate};
use crate::error::VerifyError;
use crate::phase::ParamId;
use crate::teleport::ReductionMap;
use crate::verify::proportional::{assignment, compare_with, sample_points, DEFAULT_RANDOM_SAMPLES};
use crate::verify::sim::{unitary, MAX_QUBITS};

pub const MAX_PARAMS: usize = 5;

/// Seed of the random sample points used by the search.
const SAMPLE_SEED: u64 = 0x5eed;

/// All set partitions of `0..k` into exactly `l` blocks, as restricted growth
/// strings in lexicographic order.
fn partitions(k: usize, l: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, k: usize, l: usize, max: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == k {
            if max == l {
                out.push(prefix.clone());
            }
            return;
        }
        let remaining = k - prefix.len();
        for b in 0..=max.min(l - 1) {
            let new_max = max.max(b + 1);
            if l - new_max > remaining - 1 {
                continue;
            }
            prefix.push(b);
            rec(prefix, k, l, new_max, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if l >= 1 && l <= k {
        rec(&mut Vec::new(), k, l, 0, &mut out);
    }
    out
}

/// Every (representative, sign pattern) choice for a partition. Rows are
/// listed in block order; the representative has coefficient +1.
fn candidates(params: &[ParamId], blocks: &[usize], l: usize) -> Vec<ReductionMap> {
    let k = params.len();
    let members: Vec<Vec<usize>> = (0..l)
        .map(|b| (0..k).filter(|&j| blocks[j] == b).collect())
        .collect();
    // Per block: list of (representative, row).
    let options: Vec<Vec<(usize, Vec<i8>)>> = members
        .iter()
        .map(|m| {
            let mut opts = Vec::new();
            for &rep in m {
                let others: Vec<usize> = m.iter().copied().filter(|&j| j != rep).collect();
                for signs in 0..1u32 << others.len() {
                    let mut row = vec![0i8; k];
                    row[rep] = 1;
                    for (bit, &j) in others.iter().enumerate() {
                        row[j] = if signs >> bit & 1 == 1 { -1 } else { 1 };
                    }
                    opts.push((rep, row));
                }
            }
            opts
        })
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; l];
    loop {
        let rows: Vec<&(usize, Vec<i8>)> = (0..l).map(|b| &options[b][choice[b]]).collect();
        out.push(ReductionMap {
            params_in: params.to_vec(),
            new_param_names: rows.iter().map(|(rep, _)| params[*rep].clone()).collect(),
            p_matrix: rows.iter().map(|(_, r)| r.clone()).collect(),
            constants: vec![0; l],
            eliminated: Vec::new(),
        });
        // Odometer over the per-block options, last block fastest.
        let mut b = l;
        loop {
            if b == 0 {
                return out;
            }
            b -= 1;
            choice[b] += 1;
            if choice[b] < options[b].len() {
                break;
            }
            choice[b] = 0;
        }
    }
}

/// `c` with every parametrised gate not named in `keep` removed.
fn zeroed(c: &Circuit, keep: &[ParamId]) -> Circuit {
    Circuit {
        n_qubits: c.n_qubits,
        gates: c
            .gates
            .iter()
            .filter(|g| match g {
                Gate::RzParam(_, p) => keep.contains(p),
                _ => true,
            })
            .cloned()
            .collect(),
    }
}

/// Smallest number of parameters an in-place reduction of `c` can have,
/// with the first witness found in enumeration order.
pub fn brute_force_min(c: &Circuit, tol: f64) -> Result<(usize, ReductionMap), VerifyError> {
    let params = c.params();
    let k = params.len();
    if k > MAX_PARAMS {
        return Err(VerifyError::TooManyParams { params: k, max: MAX_PARAMS });
    }
    if c.n_qubits > MAX_QUBITS {
        return Err(VerifyError::TooManyQubits { qubits: c.n_qubits, max: MAX_QUBITS });
    }
    if k == 0 {
        return Ok((0, ReductionMap::identity(&[])));
    }
    let points = sample_points(k, DEFAULT_RANDOM_SAMPLES, SAMPLE_SEED);
    let u1s = points
        .iter()
        .map(|p| unitary(c, &assignment(&params, p)))
        .collect::<Result<Vec<_>, _>>()?;
    for l in 1..=k {
        let cands: Vec<ReductionMap> = partitions(k, l)
            .iter()
            .flat_map(|blocks| candidates(&params, blocks, l))
            .collect();
        let found = cands.into_par_iter().find_first(|m| {
            let c2 = zeroed(c, &m.new_param_names);
            compare_with(&u1s, &points, &c2, m, tol).is_ok_and(|r| r.holds)
        });
        if let Some(m) = found {
            return Ok((l, m));
        }
    }
    unreachable!("the identity map always passes")
}

/// The circuit a witness from [`brute_force_min`] refers to.
pub fn witness_circuit(c: &Circuit, witness: &ReductionMap) -> Circuit {
    zeroed(c, &witness.new_param_names)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::parse_circuit;

    #[test]
    fn bell_numbers() {
        let total: usize = (1..=5).map(|l| partitions(5, l).len()).sum();
        assert_eq!(total, 52);
        assert_eq!(partitions(3, 2), vec![vec![0, 0, 1], vec![0, 1, 0], vec![0, 1, 1]]);
    }

    #[test]
    fn candidate_count_single_block() {
        // k·2^{k-1} choices for one block.
        assert_eq!(candidates(&["a".into(), "b".into()], &[0, 0], 1).len(), 4);
    }

    #[test]
    fn fusion_example() {
        let c = parse_circuit("qreg 1\nrz(t0) 0\nrz(t1) 0").unwrap();
        let (n, w) = brute_force_min(&c, 1e-9).unwrap();
        assert_eq!(n, 1);
        assert_eq!(w.p_matrix, vec![vec![1, 1]]);
    }

    #[test]
    fn hadamard_separated() {
        let c = parse_circuit("qreg 1\nrz(t0) 0\nh 0\nrz(t1) 0").unwrap();
        assert_eq!(brute_force_min(&c, 1e-9).unwrap().0, 2);
    }

    #[test]
    fn no_parameters() {
        let c = parse_circuit("qreg 2\ncx 0 1").unwrap();
        assert_eq!(brute_force_min(&c, 1e-9).unwrap().0, 0);
    }

    #[test]
    fn too_many() {
        let src = (0..6).fold("qreg 1\n".to_string(), |s, i| s + &format!("rz(p{i}) 0\nh 0\n"));
        let c = parse_circuit(&src).unwrap();
        assert!(matches!(brute_force_min(&c, 1e-9), Err(VerifyError::TooManyParams { .. })));
    }
}
