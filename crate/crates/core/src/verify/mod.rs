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

//! Oracles used to check the optimiser: tensor contraction, dense circuit
//! simulation, proportionality tests, AP-form decomposition, structural
//! certificates and brute-force search.

pub mod apform;
pub mod brute;
pub mod certificate;
pub mod proportional;
pub mod sim;
pub mod tensor;

pub use apform::{ap_form, APForm};
pub use brute::brute_force_min;
pub use certificate::{optimality_certificate, zz_certificate, CertificateReport, ZzCondition, ZzPair};
pub use proportional::{check_proportional, check_reduction, ProportionalityReport};
pub use tensor::{network_eval, tensor_eval, TensorState};
