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

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use rayon::prelude::*;
use serde::Serialize;

use zxparam::teleport::MapReport;
use zxparam::verify::{brute_force_min, check_reduction, optimality_certificate, CertificateReport, ProportionalityReport};
use zxparam::{circuit_to_diagram, emit_circuit, parse_circuit, phase_teleport, simplify, Circuit, ReductionMap};

use crate::Common;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Exit {
    Ok = 0,
    Input = 1,
    Internal = 2,
    Verify = 3,
    OracleBeats = 4,
}

impl From<Exit> for ExitCode {
    fn from(e: Exit) -> ExitCode {
        ExitCode::from(e as u8)
    }
}

/// A failure with the exit code it maps to.
struct Failure(Exit, String);

impl Failure {
    fn input(e: impl std::fmt::Display) -> Self {
        Failure(Exit::Input, e.to_string())
    }

    fn internal(e: impl std::fmt::Display) -> Self {
        Failure(Exit::Internal, e.to_string())
    }
}

fn read_circuit(path: &Path) -> Result<Circuit, Failure> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(|e| Failure::input(format!("{e:#}")))?;
    parse_circuit(&text).map_err(|e| Failure::input(format!("{}:{e}", path.display())))
}

/// Writes through a temporary file in the same directory, then renames.
fn write_atomic(path: &Path, contents: &str) -> anyhow::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, contents).with_context(|| format!("cannot write {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("cannot rename {} to {}", tmp.display(), path.display()))?;
    Ok(())
}

fn write_report<T: Serialize>(common: &Common, report: &T) -> Exit {
    let Some(path) = &common.report else { return Exit::Ok };
    let json = serde_json::to_string_pretty(report).expect("reports serialise");
    match write_atomic(path, &(json + "\n")) {
        Ok(()) => Exit::Ok,
        Err(e) => {
            eprintln!("error: {e:#}");
            Exit::Input
        }
    }
}

fn display(p: &Path) -> String {
    p.display().to_string()
}

#[derive(Serialize)]
struct Report<F> {
    command: &'static str,
    seed: u64,
    files: Vec<F>,
}

#[derive(Serialize, Default)]
struct OptimizeFile {
    input: String,
    exit: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    output: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    map_file: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    params_before: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    params_after: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    map: Option<MapReport>,
}

fn output_paths(input: &Path, out_dir: Option<&Path>) -> (PathBuf, PathBuf) {
    let dir = out_dir
        .map(Path::to_path_buf)
        .unwrap_or_else(|| input.parent().map(Path::to_path_buf).unwrap_or_default());
    let stem = input.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "circuit".into());
    (dir.join(format!("{stem}.opt.qc")), dir.join(format!("{stem}.map.json")))
}

fn optimize_one(input: &Path, out_dir: Option<&Path>) -> Result<(Circuit, Circuit, ReductionMap, PathBuf, PathBuf), Failure> {
    let c = read_circuit(input)?;
    let (out, map) = phase_teleport(&c).map_err(Failure::internal)?;
    map.check().map_err(Failure::internal)?;
    if out.num_params() != map.params_out() {
        return Err(Failure::internal(format!(
            "output has {} parameters but the map has {} rows",
            out.num_params(),
            map.params_out()
        )));
    }
    let (out_path, map_path) = output_paths(input, out_dir);
    let map_json = serde_json::to_string_pretty(&map.to_report()).map_err(Failure::internal)?;
    write_atomic(&out_path, &emit_circuit(&out)).map_err(|e| Failure::input(format!("{e:#}")))?;
    write_atomic(&map_path, &(map_json + "\n")).map_err(|e| Failure::input(format!("{e:#}")))?;
    Ok((c, out, map, out_path, map_path))
}

pub fn optimize(common: &Common, inputs: &[PathBuf], out_dir: Option<&Path>) -> Exit {
    let results: Vec<_> = inputs.par_iter().map(|p| optimize_one(p, out_dir)).collect();
    let mut worst = Exit::Ok;
    let mut files = Vec::new();
    for (input, r) in inputs.iter().zip(results) {
        let mut f = OptimizeFile {
            input: display(input),
            ..Default::default()
        };
        match r {
            Ok((c, out, map, out_path, map_path)) => {
                println!(
                    "{}: {} -> {} parameters, wrote {}",
                    input.display(),
                    c.num_params(),
                    out.num_params(),
                    out_path.display()
                );
                for line in map.to_string().lines() {
                    println!("  {line}");
                }
                f.output = Some(display(&out_path));
                f.map_file = Some(display(&map_path));
                f.params_before = Some(c.num_params());
                f.params_after = Some(out.num_params());
                f.map = Some(map.to_report());
            }
            Err(Failure(code, msg)) => {
                eprintln!("error: {msg}");
                f.exit = code as u8;
                f.error = Some(msg);
                worst = worst.max(code);
            }
        }
        files.push(f);
    }
    let report = Report {
        command: "optimize",
        seed: common.seed,
        files,
    };
    worst.max(write_report(common, &report))
}

#[derive(Serialize)]
struct VerifyReport {
    original: String,
    optimised: String,
    map: String,
    seed: u64,
    exit: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    proportionality: Option<ProportionalityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<CertificateReport>,
}

fn read_map(path: &Path) -> Result<ReductionMap, Failure> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(|e| Failure::input(format!("{e:#}")))?;
    let report: MapReport =
        serde_json::from_str(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    ReductionMap::from_report(&report).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

pub fn verify(common: &Common, original: &Path, optimised: &Path, map_path: &Path) -> Exit {
    let mut report = VerifyReport {
        original: display(original),
        optimised: display(optimised),
        map: display(map_path),
        seed: common.seed,
        exit: 0,
        error: None,
        proportionality: None,
        certificate: None,
    };
    let result = (|| -> Result<(), Failure> {
        let c1 = read_circuit(original)?;
        let c2 = read_circuit(optimised)?;
        let map = read_map(map_path)?;
        let prop = check_reduction(&c1, &c2, &map, common.samples, common.tol, common.seed).map_err(Failure::input)?;
        let d = circuit_to_diagram(&c1).map_err(Failure::input)?;
        let (terminal, _) = simplify(d);
        let cert = optimality_certificate(&terminal).map_err(Failure::internal)?;
        println!(
            "proportional: {} ({} samples, max deviation {:.3e}, tol {:e})",
            if prop.holds { "yes" } else { "no" },
            prop.samples.len(),
            prop.max_deviation,
            common.tol
        );
        println!("certificate: {}", if cert.passes { "pass" } else { "fail" });
        let first = prop.first_failure;
        let sample = first.map(|i| prop.samples[i].clone());
        let holds = prop.holds;
        let passes = cert.passes;
        let failures = format!("{:?}", cert.failures);
        report.proportionality = Some(prop);
        report.certificate = Some(cert);
        if !holds {
            return Err(Failure(
                Exit::Verify,
                format!("proportionality fails at sample {} with parameters {:?}", first.unwrap_or(0), sample.unwrap_or_default()),
            ));
        }
        if !passes {
            return Err(Failure(Exit::Verify, format!("certificate fails: {failures}")));
        }
        Ok(())
    })();
    let exit = match result {
        Ok(()) => Exit::Ok,
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            report.exit = code as u8;
            report.error = Some(msg);
            code
        }
    };
    exit.max(write_report(common, &report))
}

#[derive(Serialize, Default)]
struct OracleFile {
    input: String,
    exit: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    min: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    optimiser: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<MapReport>,
}

fn oracle_one(input: &Path, max_params: usize, tol: f64) -> Result<(usize, usize, ReductionMap), Failure> {
    let c = read_circuit(input)?;
    if c.num_params() > max_params {
        return Err(Failure::input(format!(
            "{}: {} parameters exceed --oracle-max-params {max_params}",
            input.display(),
            c.num_params()
        )));
    }
    let (min, witness) = brute_force_min(&c, tol).map_err(|e| Failure::input(format!("{}: {e}", input.display())))?;
    let (out, _) = phase_teleport(&c).map_err(Failure::internal)?;
    Ok((min, out.num_params(), witness))
}

/// Exit code for an oracle minimum `min` against the optimiser's count.
fn verdict(min: usize, optimiser: usize) -> Exit {
    use std::cmp::Ordering::*;
    match min.cmp(&optimiser) {
        Equal => Exit::Ok,
        Less => Exit::OracleBeats,
        // The optimiser's output is itself an in-place reduction.
        Greater => Exit::Internal,
    }
}

pub fn oracle(common: &Common, inputs: &[PathBuf], max_params: usize) -> Exit {
    let results: Vec<_> = inputs.par_iter().map(|p| oracle_one(p, max_params, common.tol)).collect();
    let mut worst = Exit::Ok;
    let mut files = Vec::new();
    for (input, r) in inputs.iter().zip(results) {
        let mut f = OracleFile {
            input: display(input),
            ..Default::default()
        };
        let outcome = match r {
            Ok((min, opt, witness)) => {
                println!("{}: min = {min}, optimiser = {opt}", input.display());
                for line in witness.to_string().lines() {
                    println!("  {line}");
                }
                f.min = Some(min);
                f.optimiser = Some(opt);
                f.witness = Some(witness.to_report());
                match verdict(min, opt) {
                    Exit::Ok => Ok(()),
                    Exit::OracleBeats => Err(Failure(Exit::OracleBeats, format!("{}: oracle found {min} < {opt}", input.display()))),
                    code => Err(Failure(
                        code,
                        format!("{}: optimiser claims {opt} parameters, below the exhaustive minimum {min}", input.display()),
                    )),
                }
            }
            Err(e) => Err(e),
        };
        if let Err(Failure(code, msg)) = outcome {
            eprintln!("error: {msg}");
            f.exit = code as u8;
            f.error = Some(msg);
            worst = worst.max(code);
        }
        files.push(f);
    }
    let report = Report {
        command: "oracle",
        seed: common.seed,
        files,
    };
    worst.max(write_report(common, &report))
}
