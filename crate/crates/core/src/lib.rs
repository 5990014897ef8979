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

//! Parameter-count optimisation for parametrised Clifford circuits.
//!
//! Circuits built from Clifford gates and symbolic `rz` rotations are turned
//! into graph-like ZX-diagrams, simplified until no two parameters can be
//! merged, and the merges are applied back to the circuit in place.

pub mod circuit;
pub mod diagram;
pub mod error;
pub mod gen;
pub mod network;
pub mod phase;
pub mod rewrite;
pub mod teleport;
pub mod verify;

pub use circuit::{circuit_to_diagram, emit_circuit, parse_circuit, Circuit, Gate};
pub use diagram::{find_gadgets, validate, Diagram, EdgeKind, GadgetView, Io, VertexId};
pub use error::{GraphError, ParseError, ReductionError, RewriteError, VerifyError};
pub use phase::{Assignment, ParamExpr, ParamId, Phase};
pub use rewrite::{simplify, simplify_with, RewriteEvent, Rule, Schedule};
pub use teleport::{extract_reduction, phase_teleport, ReductionMap};
