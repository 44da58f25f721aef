// Copyright 2026 The symplectomo Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use symplectomo::commands::{
    cmd_invert, cmd_mean, cmd_star, cmd_tomogram, default_out, InvertTarget, StarRoute, TomogramMethod,
};
use symplectomo::config::{self, Overrides, RunConfig};
use symplectomo::formats::write_json;
use symplectomo::verify::{run_suite, Profile, Status, SuiteConfig};
use symplectomo::{CliError, CliResult};

/// Symplectic tomograms, their inversion, and tomographic star products.
#[derive(Parser)]
#[command(name = "symplectomo", version, about)]
struct Cli {
    /// JSON run configuration
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(flatten)]
    overrides: Overrides,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tomogram slices of a state, one CSV per frame plus a manifest
    Tomogram {
        state: String,
        #[arg(long, value_enum, default_value_t)]
        method: TomogramMethod,
    },
    /// Reconstruct a Wigner function, density matrix or classical density
    Invert {
        /// Directory written by `tomogram`
        dir: PathBuf,
        #[arg(long, value_enum)]
        target: InvertTarget,
    },
    /// Star product of two states or operators (q, p, 1) at X,mu,nu
    Star {
        a: String,
        b: String,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        point: [f64; 3],
        #[arg(long, value_enum, default_value_t)]
        route: StarRoute,
    },
    /// Mean value of 1, q, p, q2, p2 or qp+pq from tomogram moments
    Mean {
        state: String,
        #[arg(long)]
        observable: String,
    },
    /// Run the verification suite
    Verify {
        #[arg(value_enum, default_value = "quick")]
        profile: Profile,
        /// Report path (default: <out>/report.json)
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

fn parse_point(s: &str) -> Result<[f64; 3], String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|_| format!("`{p}` is not a number")))
        .collect::<Result<_, _>>()?;
    <[f64; 3]>::try_from(v).map_err(|_| "expected X,mu,nu".to_owned())
}

fn print_json<T: serde::Serialize>(value: &T, out: Option<&Path>, file: &str) -> CliResult<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    if let Some(dir) = out {
        write_json(&dir.join(file), value)?;
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    let cfg: RunConfig = config::resolve(cli.config.as_deref(), &cli.overrides)?;
    let out = cli.out.clone();
    match cli.command {
        Command::Tomogram { state, method } => {
            let dir = out.unwrap_or_else(default_out);
            let m = cmd_tomogram(&state, &cfg, method, &dir)?;
            eprintln!("wrote {} slices to {}", m.slices.len(), dir.display());
        }
        Command::Invert { dir, target } => {
            let dest = out.unwrap_or_else(|| dir.clone());
            let inv = cmd_invert(&dir, target, &cfg, &dest)?;
            eprintln!("wrote {}", dest.join(&inv.output).display());
        }
        Command::Star { a, b, point, route } => {
            let report = cmd_star(&a, &b, point, route, &cfg)?;
            print_json(&report, out.as_deref(), "star.json")?;
        }
        Command::Mean { state, observable } => {
            let report = cmd_mean(&state, &observable, &cfg)?;
            print_json(&report, out.as_deref(), "mean.json")?;
        }
        Command::Verify { profile, report } => {
            let mut suite = SuiteConfig::new(profile, cfg.seed);
            if cli.overrides.dim.is_some() {
                suite.dim = cfg.dim;
            }
            let rep = run_suite(&suite);
            for c in &rep.checks {
                let status = match c.status {
                    Status::Pass => "pass",
                    Status::Fail => "FAIL",
                    Status::Skip => "skip",
                };
                let measured = c.measured.map_or_else(|| "-".to_owned(), |v| format!("{v:.3e}"));
                println!("{status} {} measured {measured} tolerance {:e} ({} ms)", c.name, c.tolerance, c.runtime_ms);
                if let Some(d) = &c.detail {
                    println!("     {d}");
                }
            }
            let path = report.unwrap_or_else(|| out.unwrap_or_else(default_out).join("report.json"));
            write_json(&path, &rep)?;
            if !rep.passed {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ");
            eprintln!("{}", CliError::parse("arguments", first).render());
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{}", e.render());
            ExitCode::from(1)
        }
    }
}
