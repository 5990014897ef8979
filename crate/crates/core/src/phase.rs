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

//! Exact phases: a Clifford part in units of π/2 plus a signed sum of free
//! parameters.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Name of a free parameter, e.g. `t0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ParamId(pub String);

impl ParamId {
    pub fn new(name: impl Into<String>) -> Self {
        ParamId(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ParamId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for ParamId {
    fn from(s: &str) -> Self {
        ParamId(s.to_string())
    }
}

/// Concrete parameter values (radians).
pub type Assignment = BTreeMap<ParamId, f64>;

/// A phase `k·π/2 + Σ ±α_j`.
///
/// Coefficients are always `+1` or `-1`; an absent parameter has coefficient
/// zero. The Clifford part is kept modulo 4.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Phase {
    clifford: u8,
    terms: BTreeMap<ParamId, i8>,
}

/// The parametrised part of a spider phase. Same representation as [`Phase`];
/// the alias names the role it plays in reduction bookkeeping.
pub type ParamExpr = Phase;

impl Phase {
    pub fn zero() -> Self {
        Phase::default()
    }

    /// `k·π/2`, reduced mod 4.
    pub fn clifford(k: i64) -> Self {
        Phase {
            clifford: k.rem_euclid(4) as u8,
            terms: BTreeMap::new(),
        }
    }

    /// `+α` for a single parameter.
    pub fn param(id: impl Into<ParamId>) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(id.into(), 1);
        Phase { clifford: 0, terms }
    }

    /// Builds a phase from explicit terms. Zero coefficients are dropped.
    ///
    /// Panics if a coefficient is outside `{-1, 0, 1}`.
    pub fn from_terms<I>(clifford: i64, terms: I) -> Self
    where
        I: IntoIterator<Item = (ParamId, i8)>,
    {
        let mut out = Phase::clifford(clifford);
        for (id, c) in terms {
            assert!((-1..=1).contains(&c), "coefficient {c} out of range");
            if c != 0 {
                out.terms.insert(id, c);
            }
        }
        out
    }

    /// Clifford part in units of π/2, in `0..4`.
    pub fn quarter_turns(&self) -> u8 {
        self.clifford
    }

    pub fn terms(&self) -> &BTreeMap<ParamId, i8> {
        &self.terms
    }

    pub fn params(&self) -> impl Iterator<Item = &ParamId> {
        self.terms.keys()
    }

    /// No parameter terms: the phase is a multiple of π/2.
    pub fn is_clifford(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_parametrised(&self) -> bool {
        !self.terms.is_empty()
    }

    /// 0 or π.
    pub fn is_pauli(&self) -> bool {
        self.is_clifford() && self.clifford.is_multiple_of(2)
    }

    /// ±π/2.
    pub fn is_proper_clifford(&self) -> bool {
        self.is_clifford() && self.clifford % 2 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.is_clifford() && self.clifford == 0
    }

    pub fn add_quarter_turns(&mut self, k: i64) {
        self.clifford = (self.clifford as i64 + k).rem_euclid(4) as u8;
    }

    /// Only the Clifford part, parameters dropped.
    pub fn clifford_part(&self) -> Phase {
        Phase::clifford(self.clifford as i64)
    }

    /// Only the parameter terms, Clifford part zeroed.
    pub fn param_part(&self) -> Phase {
        Phase {
            clifford: 0,
            terms: self.terms.clone(),
        }
    }

    /// Evaluates to radians. Missing parameters are reported by name.
    pub fn eval(&self, assignment: &Assignment) -> Result<f64, ParamId> {
        let mut angle = self.clifford as f64 * FRAC_PI_2;
        for (id, &c) in &self.terms {
            let v = assignment.get(id).ok_or_else(|| id.clone())?;
            angle += c as f64 * v;
        }
        Ok(angle)
    }
}

impl std::ops::Neg for Phase {
    type Output = Phase;

    fn neg(mut self) -> Phase {
        self.clifford = (4 - self.clifford) % 4;
        for c in self.terms.values_mut() {
            *c = -*c;
        }
        self
    }
}

impl std::ops::AddAssign<&Phase> for Phase {
    /// Term-wise signed sum. A parameter occurring on both sides with opposite
    /// signs cancels; with equal signs it would need coefficient ±2, which
    /// parameter uniqueness rules out.
    fn add_assign(&mut self, rhs: &Phase) {
        self.add_quarter_turns(rhs.clifford as i64);
        for (id, &c) in &rhs.terms {
            let entry = self.terms.entry(id.clone()).or_insert(0);
            *entry += c;
            assert!(
                (-1..=1).contains(entry),
                "parameter {id} would acquire coefficient {entry}"
            );
            if *entry == 0 {
                self.terms.remove(id);
            }
        }
    }
}

impl std::ops::Add<&Phase> for Phase {
    type Output = Phase;

    fn add(mut self, rhs: &Phase) -> Phase {
        self += rhs;
        self
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (id, &c) in &self.terms {
            match (first, c) {
                (true, 1) => write!(f, "{id}")?,
                (true, _) => write!(f, "-{id}")?,
                (false, 1) => write!(f, " + {id}")?,
                (false, _) => write!(f, " - {id}")?,
            }
            first = false;
        }
        let cliff = match self.clifford {
            0 => None,
            1 => Some("pi/2"),
            2 => Some("pi"),
            _ => Some("3pi/2"),
        };
        match (first, cliff) {
            (true, None) => write!(f, "0"),
            (true, Some(c)) => write!(f, "{c}"),
            (false, Some(c)) => write!(f, " + {c}"),
            (false, None) => Ok(()),
        }
    }
}
