// Copyright 2026 The covphase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use covphase_cli::commands::{self, Overrides};
use covphase_cli::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "covphase",
    version,
    about = "Covariant phase-space observables on a periodic lattice"
)]
struct Cli {
    /// JSON experiment configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    n: Option<usize>,
    #[arg(long, global = true)]
    dx: Option<f64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    count: Option<usize>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print the effective configuration as JSON and exit.
    #[arg(long, global = true)]
    dump_config: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the position and momentum margin densities of G_T.
    Margins,
    /// Sample phase-space outcomes.
    Simulate,
    /// Run the verification suite and print a JSON report.
    Verify,
    /// Two states with equal margins and distinct phase-space observables.
    PauliDemo,
    /// Build a state with prescribed margin variances.
    JointState,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let overrides = Overrides {
        n: cli.n,
        dx: cli.dx,
        seed: cli.seed,
        count: cli.count,
        out: cli.out,
    };
    let cfg = commands::load_config(cli.config.as_deref(), &overrides)?;
    if cli.dump_config {
        println!("{}", cfg.to_json());
        return Ok(());
    }
    let command = cli
        .command
        .ok_or_else(|| CliError::Usage("missing subcommand (see --help)".into()))?;
    match command {
        Command::Margins => eprintln!("{}", commands::margins(&cfg)?),
        Command::Simulate => eprintln!("{}", commands::simulate(&cfg)?),
        Command::PauliDemo => println!("{}", commands::pauli_demo(&cfg)?),
        Command::JointState => println!("{}", commands::joint_state(&cfg)?),
        Command::Verify => {
            let report = commands::verify(&cfg)?;
            println!("{}", report.to_json());
            if !report.passed {
                let names: Vec<&str> = report.failed().map(|c| c.name.as_str()).collect();
                return Err(CliError::ChecksFailed(format!(
                    "failed checks: {}",
                    names.join(", ")
                )));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("covphase: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
