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

//! `zxparam` command-line driver.
//!
//! Exit codes: 0 success, 1 bad input (parse error, dimension mismatch, too
//! many parameters, unreadable file), 2 internal invariant violation,
//! 3 verification failure, 4 the brute-force oracle beat the optimiser.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use commands::Exit;

#[derive(Parser, Debug)]
#[command(name = "zxparam", version, about = "Parameter-count optimisation for parametrised Clifford circuits")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Seed for random parameter samples.
    #[arg(long, global = true, env = "ZXPARAM_SEED", default_value_t = 0)]
    pub seed: u64,

    /// Number of random parameter vectors per check, on top of the {0, pi} set.
    #[arg(long, global = true, default_value_t = 5)]
    pub samples: usize,

    /// Relative tolerance for proportionality checks.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,

    /// Write a JSON report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub report: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Optimise circuits and write `<stem>.opt.qc` and `<stem>.map.json`.
    Optimize {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,

        /// Directory for the outputs (default: next to each input).
        #[arg(long, short = 'o', value_name = "DIR")]
        out_dir: Option<PathBuf>,
    },
    /// Check an optimised circuit and its map against the original.
    Verify {
        original: PathBuf,
        optimised: PathBuf,
        map: PathBuf,
    },
    /// Find the minimum parameter count by exhaustive search.
    Oracle {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,

        /// Refuse circuits with more parameters than this.
        #[arg(long, default_value_t = 4)]
        oracle_max_params: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => Exit::Input.into(),
            };
        }
    };
    let c = &cli.common;
    if c.tol.is_nan() || c.tol <= 0.0 {
        eprintln!("error: --tol must be positive");
        return Exit::Input.into();
    }
    if c.samples < 2 {
        eprintln!("error: --samples must be at least 2");
        return Exit::Input.into();
    }
    let exit = match &cli.command {
        Command::Optimize { inputs, out_dir } => commands::optimize(c, inputs, out_dir.as_deref()),
        Command::Verify { original, optimised, map } => commands::verify(c, original, optimised, map),
        Command::Oracle {
            inputs,
            oracle_max_params,
        } => commands::oracle(c, inputs, *oracle_max_params),
    };
    exit.into()
}
