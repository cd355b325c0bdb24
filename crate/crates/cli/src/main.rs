//! `qinv`: evaluate, enumerate, verify, certify and optimize four-qubit
//! SL-invariants from the command line. Input and output are JSON.
//!
//! Exit codes: 0 success, 1 a check or certification failed, 2 bad usage or input.

mod input;
mod report;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qinv_core::group::{generate_closure, Which};
use qinv_core::invariants::{self, eval_invariants};
use qinv_core::optimizer::{self, OptConfig};
use qinv_core::qstate::{self, StateInput, MAX_ORBIT_DIM};
use qinv_core::{Error, RatMatrix};
use serde::Serialize;

use report::{pair, CertifyReport, GroupReport, PolyDump, StateReport};

#[derive(Parser, Debug)]
#[command(name = "qinv", version, about = "Symmetric SL-invariants of four qubits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct StateArgs {
    /// A-coordinates as a JSON list of four [re, im] pairs.
    #[arg(long, conflicts_with = "state_file")]
    a: Option<String>,
    /// JSON file holding {"a": [...]} or {"n": .., "amps": [...]}; stdin when neither flag is given.
    #[arg(long)]
    state_file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate the invariants of a state.
    Eval {
        #[command(flatten)]
        state: StateArgs,
        /// Print a named polynomial (E0..E4, F1..F12, delta, gamma, gamma_newton, jacobian) instead.
        #[arg(long, value_name = "NAME")]
        dump_poly: Option<String>,
    },
    /// Enumerate one of the groups acting on A.
    Group {
        #[arg(long, default_value = "WTilde")]
        which: String,
        /// Include every element in the output.
        #[arg(long)]
        dump_elements: bool,
        #[arg(long, default_value_t = qinv_core::group::DEFAULT_CAP)]
        cap: usize,
    },
    /// Run a verification suite: symbolic, group, numeric or all.
    Verify {
        #[arg(value_name = "SUITE", conflicts_with = "suite")]
        positional: Option<String>,
        #[arg(long)]
        suite: Option<String>,
        /// Random points for the genericity check.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 50)]
        restarts: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Decide whether a four-qubit state is generic (orbit of dimension 12).
    Certify {
        #[command(flatten)]
        state: StateArgs,
    },
    /// Maximize |gamma| over the unit sphere of A.
    Optimize {
        #[arg(long, default_value_t = OptConfig::default().restarts)]
        restarts: usize,
        #[arg(long, default_value_t = OptConfig::default().seed)]
        seed: u64,
        #[arg(long, default_value_t = OptConfig::default().max_iters)]
        max_iters: usize,
        /// Convergence threshold on |projected gradient| / |gamma|^2.
        #[arg(long, default_value_t = OptConfig::default().tol_grad)]
        tol: f64,
        #[arg(long, default_value_t = OptConfig::default().step)]
        step: f64,
        /// Only certify the known critical point L (criticality and Hessian).
        #[arg(long = "check-L")]
        check_l: bool,
    },
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(String, bool), Failure>;

fn emit<T: Serialize>(value: &T, ok: bool) -> Outcome {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Check(format!("cannot serialize output: {e}")))?;
    Ok((text, ok))
}

fn eval(state: &StateArgs, dump_poly: Option<&str>) -> Outcome {
    if let Some(name) = dump_poly {
        let p = invariants::named(name)?;
        return emit(
            &PolyDump {
                name: name.to_string(),
                degree: p.degree(),
                term_count: p.len(),
                display: p.to_string(),
                poly: p.to_json(),
            },
            true,
        );
    }
    match input::read_state(state.a.as_deref(), state.state_file.as_deref())? {
        StateInput::A { a } => emit(&eval_invariants(&a)?, true),
        StateInput::Full(psi) => {
            let n = psi.n();
            let mut r = StateReport { n, f2: None, f4: None, bilinear_form: None, orbit_dim: None, generic: None };
            match n {
                2 => r.f2 = Some(pair(qstate::bilinear_form(&psi)?)),
                3 => r.f4 = Some(pair(qstate::f4(&psi)?)),
                4 => {
                    r.bilinear_form = Some(pair(qstate::bilinear_form(&psi)?));
                    let dim = qstate::orbit_dim(&psi)?;
                    r.orbit_dim = Some(dim);
                    r.generic = Some(dim == MAX_ORBIT_DIM);
                }
                _ if n % 2 == 0 => r.bilinear_form = Some(pair(qstate::bilinear_form(&psi)?)),
                _ => return Err(Failure::Usage(format!("no invariant implemented for {n} qubits"))),
            }
            emit(&r, true)
        }
    }
}

fn group(which: &str, dump_elements: bool, cap: usize) -> Outcome {
    let which: Which = which.parse()?;
    let g = generate_closure(&which.generators(), cap)?;
    let minus_i = qinv_core::GroupElement::new(RatMatrix::identity().scale(&qinv_core::rat(-1, 1)))?;
    let has_minus_i = g.contains(&minus_i);
    emit(
        &GroupReport {
            which: which.name().into(),
            order: g.order(),
            rotations: g.rotation_count(),
            contains_minus_identity: has_minus_i,
            order_mod_sign: if has_minus_i { g.order() / 2 } else { g.order() },
            generators: g.generators().iter().map(|e| e.to_strings()).collect(),
            elements: dump_elements.then(|| g.elements().iter().map(|e| e.to_strings()).collect()),
        },
        true,
    )
}

fn certify(state: &StateArgs) -> Outcome {
    let input = input::read_state(state.a.as_deref(), state.state_file.as_deref())?;
    let psi = input.to_state();
    let singular_values = qstate::tangent_singular_values(&psi)?;
    let dim = qstate::orbit_dim(&psi)?;
    let (gamma, gamma_nonzero) = match &input {
        StateInput::A { a } => (Some(pair(invariants::gamma_value(&a.0))), Some(invariants::gamma_nonzero(a))),
        StateInput::Full(_) => (None, None),
    };
    let generic = dim == MAX_ORBIT_DIM;
    emit(
        &CertifyReport { orbit_dim: dim, max_orbit_dim: MAX_ORBIT_DIM, singular_values, generic, gamma, gamma_nonzero },
        generic,
    )
}

fn optimize(cfg: OptConfig, check_l: bool) -> Outcome {
    if check_l {
        let cert = optimizer::certify_critical(&invariants::z_l())?;
        let ok = cert.passed;
        return emit(&cert, ok);
    }
    emit(&optimizer::maximize_abs_gamma(&cfg)?, true)
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("QINV_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Failure::Usage(format!("QINV_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Usage(format!("cannot configure thread pool: {e}")))
}

fn run(cli: Cli) -> Outcome {
    configure_threads()?;
    match cli.command {
        Command::Eval { state, dump_poly } => eval(&state, dump_poly.as_deref()),
        Command::Group { which, dump_elements, cap } => group(&which, dump_elements, cap),
        Command::Verify { positional, suite, samples, restarts, seed } => {
            let name = suite.or(positional).unwrap_or_else(|| "all".into());
            let suite: verify::Suite = name.parse().map_err(Failure::Usage)?;
            let report = verify::run(suite, &verify::Options { samples, restarts, seed });
            let ok = report.passed;
            emit(&report, ok)
        }
        Command::Certify { state } => certify(&state),
        Command::Optimize { restarts, seed, max_iters, tol, step, check_l } => {
            let cfg = OptConfig { restarts, max_iters, step, tol_grad: tol, seed };
            cfg.validate()?;
            optimize(cfg, check_l)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((text, ok)) => {
            println!("{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
