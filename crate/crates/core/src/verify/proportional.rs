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

//! Proportionality checks between tensors and between circuits.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::circuit::Circuit;
use crate::error::VerifyError;
use crate::phase::{Assignment, ParamId};
use crate::teleport::ReductionMap;
use crate::verify::sim::unitary;
use crate::verify::tensor::TensorState;

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_RANDOM_SAMPLES: usize = 5;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProportionalityReport {
    pub holds: bool,
    /// `λ` per sample, with `t1 = λ·t2`, as `(re, im)`.
    pub ratios: Vec<(f64, f64)>,
    pub max_deviation: f64,
    /// Index of the first sample that failed.
    pub first_failure: Option<usize>,
    /// Parameter values used for each sample (original parameters).
    pub samples: Vec<Vec<f64>>,
}

/// Best `λ` with `a ≈ λ·b` and the residual `max|a − λb| / max|a|`.
pub fn ratio(a: &[Complex64], b: &[Complex64]) -> (Complex64, f64) {
    let nb: f64 = b.iter().map(|z| z.norm_sqr()).sum();
    let scale = a.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if nb == 0.0 || scale == 0.0 {
        return (Complex64::new(0.0, 0.0), if scale == 0.0 && nb == 0.0 { 0.0 } else { f64::INFINITY });
    }
    let lambda: Complex64 = b.iter().zip(a).map(|(y, x)| y.conj() * x).sum::<Complex64>() / nb;
    let dev = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x - lambda * y).norm())
        .fold(0.0, f64::max)
        / scale;
    (lambda, dev)
}

fn sample_ok(lambda: Complex64, dev: f64, tol: f64) -> bool {
    lambda.norm() > 0.0 && dev <= tol
}

pub fn check_proportional(t1: &TensorState, t2: &TensorState, tol: f64) -> Result<ProportionalityReport, VerifyError> {
    if t1.wires() != t2.wires() || t1.amplitudes.len() != t2.amplitudes.len() {
        return Err(VerifyError::ShapeMismatch(t1.wires(), t2.wires()));
    }
    let (lambda, dev) = ratio(&t1.amplitudes, &t2.amplitudes);
    let holds = sample_ok(lambda, dev, tol);
    Ok(ProportionalityReport {
        holds,
        ratios: vec![(lambda.re, lambda.im)],
        max_deviation: dev,
        first_failure: (!holds).then_some(0),
        samples: Vec::new(),
    })
}

/// Sample points: all zeros, then `π` on each parameter alone, then `n_random`
/// uniform vectors in `[0, 2π)^k`.
pub fn sample_points(k: usize, n_random: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut out = vec![vec![0.0; k]];
    for j in 0..k {
        let mut v = vec![0.0; k];
        v[j] = PI;
        out.push(v);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..n_random {
        out.push((0..k).map(|_| rng.gen_range(0.0..2.0 * PI)).collect());
    }
    out
}

/// Values of the new parameters for original values `alpha`.
pub fn apply_map(map: &ReductionMap, alpha: &[f64]) -> Assignment {
    map.new_param_names
        .iter()
        .zip(&map.p_matrix)
        .zip(&map.constants)
        .map(|((name, row), &c)| {
            let v: f64 = row.iter().zip(alpha).map(|(&p, a)| p as f64 * a).sum();
            (name.clone(), v + c as f64 * FRAC_PI_2)
        })
        .collect()
}

pub fn assignment(params: &[ParamId], values: &[f64]) -> Assignment {
    params.iter().cloned().zip(values.iter().copied()).collect()
}

fn check_dims(c1: &Circuit, c2: &Circuit, map: &ReductionMap) -> Result<(), VerifyError> {
    if c1.n_qubits != c2.n_qubits {
        return Err(VerifyError::DimensionMismatch(format!(
            "circuits act on {} and {} qubits",
            c1.n_qubits, c2.n_qubits
        )));
    }
    if c1.params() != map.params_in {
        return Err(VerifyError::DimensionMismatch(
            "map inputs differ from the original circuit's parameters".into(),
        ));
    }
    let mut out = c2.params();
    out.sort();
    let mut names = map.new_param_names.clone();
    names.sort();
    if out != names {
        return Err(VerifyError::DimensionMismatch(
            "map outputs differ from the optimised circuit's parameters".into(),
        ));
    }
    if map.p_matrix.len() != names.len() || map.p_matrix.iter().any(|r| r.len() != map.params_in.len()) {
        return Err(VerifyError::DimensionMismatch("map matrix has the wrong shape".into()));
    }
    Ok(())
}

/// Checks `c1(α) ∝ c2(P·α + c·π/2)` at the structured and random samples.
/// The ratio may differ between samples.
pub fn check_reduction(
    c1: &Circuit,
    c2: &Circuit,
    map: &ReductionMap,
    n_samples: usize,
    tol: f64,
    seed: u64,
) -> Result<ProportionalityReport, VerifyError> {
    check_dims(c1, c2, map)?;
    let points = sample_points(map.params_in.len(), n_samples, seed);
    let u1s = points
        .iter()
        .map(|p| unitary(c1, &assignment(&map.params_in, p)))
        .collect::<Result<Vec<_>, _>>()?;
    compare_with(&u1s, &points, c2, map, tol)
}

/// Same as [`check_reduction`] with the first circuit's unitaries already
/// evaluated at `points`.
pub(crate) fn compare_with(
    u1s: &[Vec<Complex64>],
    points: &[Vec<f64>],
    c2: &Circuit,
    map: &ReductionMap,
    tol: f64,
) -> Result<ProportionalityReport, VerifyError> {
    let mut report = ProportionalityReport {
        holds: true,
        ratios: Vec::new(),
        max_deviation: 0.0,
        first_failure: None,
        samples: points.to_vec(),
    };
    for (i, (u1, p)) in u1s.iter().zip(points).enumerate() {
        let u2 = unitary(c2, &apply_map(map, p))?;
        let (lambda, dev) = ratio(u1, &u2);
        report.ratios.push((lambda.re, lambda.im));
        report.max_deviation = report.max_deviation.max(dev);
        if !sample_ok(lambda, dev, tol) {
            report.holds = false;
            report.first_failure.get_or_insert(i);
            break;
        }
    }
    Ok(report)
}

/// Parameters whose values 0 and π give proportional unitaries with all
/// other parameters at 0.
pub fn trivial_params(c: &Circuit, tol: f64) -> Result<Vec<ParamId>, VerifyError> {
    let params = c.params();
    let k = params.len();
    let base = unitary(c, &assignment(&params, &vec![0.0; k]))?;
    let mut out = Vec::new();
    for (j, p) in params.iter().enumerate() {
        let mut v = vec![0.0; k];
        v[j] = PI;
        let u = unitary(c, &assignment(&params, &v))?;
        let (lambda, dev) = ratio(&base, &u);
        if sample_ok(lambda, dev, tol) {
            out.push(p.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::parse_circuit;
    use crate::diagram::Io;

    fn state(v: Vec<Complex64>) -> TensorState {
        let w = v.len().trailing_zeros() as usize;
        TensorState {
            amplitudes: v,
            wire_order: (0..w).map(|p| (Io::Output, p)).collect(),
        }
    }

    #[test]
    fn self_proportional() {
        let t = state(vec![Complex64::new(1.0, 0.0), Complex64::new(0.3, -0.2)]);
        let r = check_proportional(&t, &t, 1e-9).unwrap();
        assert!(r.holds);
        assert!((r.ratios[0].0 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn global_phase_ratio() {
        let t = state(vec![Complex64::new(1.0, 0.0), Complex64::new(0.3, -0.2)]);
        let mut s = t.clone();
        let w = Complex64::from_polar(1.0, PI / 4.0);
        s.scale(w);
        let r = check_proportional(&t, &s, 1e-9).unwrap();
        assert!(r.holds);
        let l = Complex64::new(r.ratios[0].0, r.ratios[0].1);
        assert!((l - w.conj()).norm() < 1e-12);
    }

    #[test]
    fn orthogonal_relative_phase_fails() {
        // diag(1, e^{iα}) vs diag(1, e^{i(α+π)}) at α = 0.
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let a = state(vec![one, zero, zero, one]);
        let b = state(vec![one, zero, zero, -one]);
        assert!(!check_proportional(&a, &b, 1e-9).unwrap().holds);
    }

    #[test]
    fn shape_mismatch() {
        let a = state(vec![Complex64::new(1.0, 0.0); 2]);
        let b = state(vec![Complex64::new(1.0, 0.0); 4]);
        assert_eq!(check_proportional(&a, &b, 1e-9), Err(VerifyError::ShapeMismatch(1, 2)));
    }

    #[test]
    fn fusion_reduction() {
        let c1 = parse_circuit("qreg 1\nrz(t0) 0\nrz(t1) 0").unwrap();
        let c2 = parse_circuit("qreg 1\nrz(u0) 0").unwrap();
        let mut map = ReductionMap {
            params_in: c1.params(),
            new_param_names: vec!["u0".into()],
            p_matrix: vec![vec![1, 1]],
            constants: vec![0],
            eliminated: vec![],
        };
        assert!(check_reduction(&c1, &c2, &map, 5, 1e-9, 1).unwrap().holds);
        map.p_matrix = vec![vec![1, -1]];
        assert!(!check_reduction(&c1, &c2, &map, 5, 1e-9, 1).unwrap().holds);
        let id = ReductionMap::identity(&c1.params());
        let r = check_reduction(&c1, &c1, &id, 5, 1e-9, 1).unwrap();
        assert!(r.holds);
        assert!(r.ratios.iter().all(|&(re, im)| (re - 1.0).abs() < 1e-12 && im.abs() < 1e-12));
    }

    #[test]
    fn dimension_mismatch() {
        let c1 = parse_circuit("qreg 1\nrz(t0) 0").unwrap();
        let c2 = parse_circuit("qreg 2\nrz(t0) 0").unwrap();
        let id = ReductionMap::identity(&c1.params());
        assert!(matches!(
            check_reduction(&c1, &c2, &id, 2, 1e-9, 0),
            Err(VerifyError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn circuit_parameters_are_not_trivial() {
        let c = parse_circuit("qreg 1\nrz(a) 0").unwrap();
        assert!(trivial_params(&c, 1e-9).unwrap().is_empty());
    }
}
