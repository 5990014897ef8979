#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use zxparam::verify::proportional::ratio;
use zxparam::verify::tensor::tensor_eval;
use zxparam::{Assignment, Diagram, ParamId};

pub const TOL: f64 = 1e-9;

/// All zeros, π on each parameter alone, then `extra` random points.
pub fn samples<R: Rng>(params: &[ParamId], extra: usize, rng: &mut R) -> Vec<Assignment> {
    let k = params.len();
    let mut pts = vec![vec![0.0; k]];
    for j in 0..k {
        let mut v = vec![0.0; k];
        v[j] = PI;
        pts.push(v);
    }
    for _ in 0..extra {
        pts.push((0..k).map(|_| rng.gen_range(0.0..2.0 * PI)).collect());
    }
    pts.into_iter()
        .map(|v| params.iter().cloned().zip(v).collect())
        .collect()
}

/// Outcome of comparing two diagrams at several parameter points.
#[derive(Debug)]
pub enum Compare {
    /// Proportional everywhere with one constant ratio.
    Constant,
    /// The first diagram vanishes at some sample: the instance says nothing.
    Degenerate,
    Fails(String),
}

/// Checks `before = λ·after` with the same `λ` at every sample.
pub fn compare_constant(before: &Diagram, after: &Diagram, points: &[Assignment]) -> Compare {
    let mut first: Option<Complex64> = None;
    for (i, a) in points.iter().enumerate() {
        let t1 = match tensor_eval(before, a) {
            Ok(t) => t,
            Err(e) => return Compare::Fails(format!("before: {e}")),
        };
        let t2 = match tensor_eval(after, a) {
            Ok(t) => t,
            Err(e) => return Compare::Fails(format!("after: {e}")),
        };
        if t1.wire_order != t2.wire_order {
            return Compare::Fails("wire order changed".into());
        }
        let scale = t1.amplitudes.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if scale < 1e-9 {
            return Compare::Degenerate;
        }
        let (lambda, dev) = ratio(&t1.amplitudes, &t2.amplitudes);
        if dev > TOL || lambda.norm() == 0.0 {
            return Compare::Fails(format!("sample {i}: deviation {dev:e}"));
        }
        match first {
            None => first = Some(lambda),
            Some(l0) => {
                if (lambda - l0).norm() > TOL * l0.norm() {
                    return Compare::Fails(format!("sample {i}: ratio {lambda} differs from {l0}"));
                }
            }
        }
    }
    Compare::Constant
}
