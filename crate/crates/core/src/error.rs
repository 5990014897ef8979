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

use thiserror::Error;

use crate::diagram::VertexId;
use crate::phase::ParamId;
use crate::rewrite::Rule;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("parameter {0} occurs on more than one spider")]
    RepeatedParameter(ParamId),

    #[error("edge refers to missing node {0}")]
    MissingNode(usize),

    #[error("Hadamard box {node} has {legs} legs, expected 2")]
    HBoxArity { node: usize, legs: usize },

    #[error("boundary node {0} must have exactly one edge")]
    BoundaryDegree(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("{rule:?} does not apply at {at:?}: {reason}")]
    NotApplicable {
        rule: Rule,
        at: Vec<VertexId>,
        reason: &'static str,
    },
}

impl RewriteError {
    pub(crate) fn na(rule: Rule, at: &[VertexId], reason: &'static str) -> Self {
        RewriteError::NotApplicable {
            rule,
            at: at.to_vec(),
            reason,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{column}: syntax error: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{line}:{column}: rotation angle `{text}` is not a multiple of pi/2")]
    NonCliffordConstant {
        line: usize,
        column: usize,
        text: String,
    },

    #[error("{line}: parameter {param} is used by more than one gate")]
    RepeatedParameter { line: usize, param: ParamId },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match self {
            ParseError::Syntax { line, .. }
            | ParseError::NonCliffordConstant { line, .. }
            | ParseError::RepeatedParameter { line, .. } => *line,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("inconsistent provenance: {0}")]
    InconsistentProvenance(String),

    #[error("malformed reduction map: {0}")]
    Malformed(String),

    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("diagram has {wires} open wires, at most {max} supported")]
    TooLarge { wires: usize, max: usize },

    #[error("intermediate tensor would have {0} indices")]
    ContractionTooLarge(usize),

    #[error("no value assigned to parameter {0}")]
    MissingAssignment(ParamId),

    #[error("tensor shapes differ: {0} vs {1} wires")]
    ShapeMismatch(usize, usize),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("the diagram is the zero map")]
    ZeroState,

    #[error("diagram is not a Clifford state: {0}")]
    NotClifford(&'static str),

    #[error("diagram is not in terminal form: {0}")]
    NotTerminalForm(String),

    #[error("{params} parameters exceed the brute-force limit of {max}")]
    TooManyParams { params: usize, max: usize },

    #[error("circuit has {qubits} qubits, at most {max} supported")]
    TooManyQubits { qubits: usize, max: usize },
}
