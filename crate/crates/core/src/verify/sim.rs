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

//! Dense gate-by-gate simulation of circuits. Independent of the diagram code
//! so it can serve as an oracle for it.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::circuit::{Circuit, Gate};
use crate::error::VerifyError;
use crate::phase::Assignment;

pub const MAX_QUBITS: usize = 10;

/// Applies one gate to a state vector; qubit `q` is bit `q` of the index.
fn apply(state: &mut [Complex64], gate: &Gate, assignment: &Assignment) -> Result<(), VerifyError> {
    let i = Complex64::new(0.0, 1.0);
    let diag = |state: &mut [Complex64], q: usize, phase: Complex64| {
        for (idx, a) in state.iter_mut().enumerate() {
            if idx >> q & 1 == 1 {
                *a *= phase;
            }
        }
    };
    match gate {
        Gate::H(q) => {
            let bit = 1 << q;
            for idx in 0..state.len() {
                if idx & bit == 0 {
                    let (a, b) = (state[idx], state[idx | bit]);
                    state[idx] = (a + b) * FRAC_1_SQRT_2;
                    state[idx | bit] = (a - b) * FRAC_1_SQRT_2;
                }
            }
        }
        Gate::X(q) => {
            let bit = 1 << q;
            for idx in 0..state.len() {
                if idx & bit == 0 {
                    state.swap(idx, idx | bit);
                }
            }
        }
        Gate::S(q) => diag(state, *q, i),
        Gate::Sdg(q) => diag(state, *q, -i),
        Gate::Z(q) => diag(state, *q, Complex64::new(-1.0, 0.0)),
        Gate::RzClifford(q, k) => diag(state, *q, i.powi(*k as i32)),
        Gate::RzParam(q, p) => {
            let theta = *assignment
                .get(p)
                .ok_or_else(|| VerifyError::MissingAssignment(p.clone()))?;
            diag(state, *q, Complex64::from_polar(1.0, theta))
        }
        Gate::Cz(a, b) => {
            for (idx, amp) in state.iter_mut().enumerate() {
                if idx >> a & 1 == 1 && idx >> b & 1 == 1 {
                    *amp = -*amp;
                }
            }
        }
        Gate::Cx(c, t) => {
            let tb = 1 << t;
            for idx in 0..state.len() {
                if idx >> c & 1 == 1 && idx & tb == 0 {
                    state.swap(idx, idx | tb);
                }
            }
        }
    }
    Ok(())
}

/// Unitary as a flat vector with entry `i | (o << n)` equal to `U[o][i]`,
/// matching the wire order of diagram tensors (inputs, then outputs).
pub fn unitary(c: &Circuit, assignment: &Assignment) -> Result<Vec<Complex64>, VerifyError> {
    let n = c.n_qubits;
    if n > MAX_QUBITS {
        return Err(VerifyError::TooManyQubits { qubits: n, max: MAX_QUBITS });
    }
    let dim = 1usize << n;
    let mut out = vec![Complex64::new(0.0, 0.0); dim * dim];
    for input in 0..dim {
        let mut state = vec![Complex64::new(0.0, 0.0); dim];
        state[input] = Complex64::new(1.0, 0.0);
        for g in &c.gates {
            apply(&mut state, g, assignment)?;
        }
        for (o, a) in state.into_iter().enumerate() {
            out[input | (o << n)] = a;
        }
    }
    Ok(out)
}

/// The circuit applied to `|0…0⟩`.
pub fn state(c: &Circuit, assignment: &Assignment) -> Result<Vec<Complex64>, VerifyError> {
    let dim = 1usize << c.n_qubits;
    let mut state = vec![Complex64::new(0.0, 0.0); dim];
    state[0] = Complex64::new(1.0, 0.0);
    for g in &c.gates {
        apply(&mut state, g, assignment)?;
    }
    Ok(state)
}
