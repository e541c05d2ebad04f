//! `mllnets`: check, normalise, compose, translate and render proof nets.
//!
//! Exit status: 0 success or valid net, 1 invalid net, 2 unreadable or
//! malformed input, 3 well-formed input violating a command precondition.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mllnets::calculus::{sequentialize, translate, TranslateError};
use mllnets::category::{compose_nets, CategoryError, NetMorphism};
use mllnets::checker::{check_fast, check_old_net, old_to_new};
use mllnets::dot::render_dot;
use mllnets::format::{
    goi_to_json, lam_to_json, morphism_to_json, net_to_json, parse_goi, parse_lam, parse_morphism, parse_net,
    parse_old_net, parse_proof, proof_to_json, step_to_json, verdict_to_json, FormatError,
};
use mllnets::goi::{compose_goi, GoiError};
use mllnets::lamination::{compose_lam, LamError};
use mllnets::net::check_proof_net_oracle;
use mllnets::rewrite::{normalize_stepwise, turbo_normalize_net};
use mllnets::{ProofNet, Rejection};
use thiserror::Error;

/// Deeply nested formulas and proofs recurse; give the worker room.
const STACK_BYTES: usize = 512 << 20;

#[derive(Parser)]
#[command(name = "mllnets", version, about = "Proof nets for multiplicative linear logic with units")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write output to FILE instead of standard output.
    #[arg(short = 'o', value_name = "FILE", global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a net is a proof net; prints "valid" or a JSON witness.
    Check {
        net: PathBuf,
        /// Enumerate every switching instead of using the near-linear checker.
        #[arg(long)]
        oracle: bool,
    },
    /// Check a net given with axiom links and jumps; witnesses refer to its leaf-function form.
    CheckOld {
        net: PathBuf,
        #[arg(long)]
        oracle: bool,
    },
    /// Eliminate every cut of a proof net.
    Normalize {
        net: PathBuf,
        /// Follow the normal form with one JSON line per elimination step.
        #[arg(long)]
        steps: bool,
    },
    /// Compose two net morphisms.
    Compose { first: PathBuf, second: PathBuf },
    /// Compose two GoI morphisms along paths.
    GoiCompose { first: PathBuf, second: PathBuf },
    /// Compose two laminated morphisms.
    LamCompose { first: PathBuf, second: PathBuf },
    /// Translate a sequent proof into its proof net.
    Translate { proof: PathBuf },
    /// Recover a sequent proof from a proof net.
    Sequentialize { net: PathBuf },
    /// Draw a net in Graphviz DOT.
    Render { net: PathBuf },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Format(#[from] FormatError),
    #[error("{0}")]
    Precondition(String),
    #[error("writing output: {0}")]
    Write(#[from] io::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Read { .. } | CliError::Format(FormatError::Category(CategoryError::Edges(_))) => 2,
            CliError::Format(FormatError::Category(_)) | CliError::Precondition(_) => 3,
            CliError::Format(_) => 2,
            CliError::Write(_) => 2,
        }
    }
}

fn precondition(e: impl std::fmt::Display) -> CliError {
    CliError::Precondition(e.to_string())
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_path_buf(), source })
}

fn read_proof_net(path: &Path) -> Result<ProofNet, CliError> {
    let (g, f) = parse_net(&read(path)?)?;
    ProofNet::new(g, f).map_err(|r| precondition(format!("not a proof net: {r}")))
}

fn verdict(result: Result<(), Rejection>) -> (String, u8) {
    match result {
        Ok(()) => ("valid\n".to_string(), 0),
        Err(r) => (verdict_to_json(&Err(r)), 1),
    }
}

/// Output text and exit status of a successful run.
fn run(command: &Command) -> Result<(String, u8), CliError> {
    Ok(match command {
        Command::Check { net, oracle } => {
            let (g, f) = parse_net(&read(net)?)?;
            verdict(if *oracle { check_proof_net_oracle(&f, &g) } else { check_fast(&f, &g) })
        }
        Command::CheckOld { net, oracle } => {
            let o = parse_old_net(&read(net)?)?;
            verdict(if *oracle {
                let (f, g) = old_to_new(&o);
                check_proof_net_oracle(&f, &g)
            } else {
                check_old_net(&o)
            })
        }
        Command::Normalize { net, steps } => {
            let net = read_proof_net(net)?;
            if *steps {
                let (normal, trace) = normalize_stepwise(&net);
                let mut out = net_to_json(normal.sequent(), normal.function());
                trace.iter().for_each(|s| out.push_str(&step_to_json(s)));
                (out, 0)
            } else {
                let normal = turbo_normalize_net(&net);
                (net_to_json(normal.sequent(), normal.function()), 0)
            }
        }
        Command::Compose { first, second } => {
            let (f, g) = (parse_morphism(&read(first)?)?, parse_morphism(&read(second)?)?);
            let fg: NetMorphism = compose_nets(&f, &g).map_err(precondition)?;
            (morphism_to_json(&fg), 0)
        }
        Command::GoiCompose { first, second } => {
            let (f, g) = (parse_goi(&read(first)?)?, parse_goi(&read(second)?)?);
            let fg = compose_goi(&f, &g).map_err(|e: GoiError| precondition(e))?;
            (goi_to_json(&fg), 0)
        }
        Command::LamCompose { first, second } => {
            let (l, m) = (parse_lam(&read(first)?)?, parse_lam(&read(second)?)?);
            let lm = compose_lam(&l, &m).map_err(|e: LamError| precondition(e))?;
            (lam_to_json(&lm), 0)
        }
        Command::Translate { proof } => {
            let p = parse_proof(&read(proof)?)?;
            let net = translate(&p).map_err(|e: TranslateError| precondition(e))?;
            (net_to_json(net.sequent(), net.function()), 0)
        }
        Command::Sequentialize { net } => {
            let net = read_proof_net(net)?;
            let p = sequentialize(&net).map_err(precondition)?;
            (proof_to_json(&p), 0)
        }
        Command::Render { net } => {
            let (g, f) = parse_net(&read(net)?)?;
            (render_dot(&g, &f), 0)
        }
    })
}

fn emit(output: Option<&Path>, text: &str) -> io::Result<()> {
    match output {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let worker = std::thread::Builder::new()
        .stack_size(STACK_BYTES)
        .spawn(move || run(&cli.command).and_then(|(text, code)| Ok(emit(cli.output.as_deref(), &text).map(|()| code)?)))
        .expect("spawn worker thread");
    match worker.join().expect("worker thread panicked") {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("mllnets: {e}");
            ExitCode::from(e.code())
        }
    }
}
