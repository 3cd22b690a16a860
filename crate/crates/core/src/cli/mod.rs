//! Command-line interface.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 numerical validation
//! failure (non-unitary gate, non-orthonormal basis, oracle disagreement),
//! 3 table self-check mismatch.

pub mod commands;
pub mod format;
pub mod input;

use std::ffi::OsString;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::Error;
use commands::ScanFamily;
use input::{parse_angle, parse_resource, BasisArg, GateArg};

/// Environment variable holding the default decision tolerance.
pub const TOL_ENV: &str = "GATE_TELEPORT_TOL";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Validation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Validation(_) => 2,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_)
            | Error::QubitOutOfRange { .. }
            | Error::DuplicateTargets
            | Error::RegisterTooWide(_) => CliError::Usage(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "gate-teleport",
    version,
    about = "Decide teleportability of two-qubit gates and states"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Decision tolerance; each command documents what it controls.
    #[arg(long, global = true, env = TOL_ENV)]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Canonical decomposition `(A⊗B)·exp(i Σ θ σσ)·(C⊗D)` of a gate.
    Kak {
        #[arg(long)]
        gate: String,
    },
    /// Per-outcome gate-teleportation verdicts and corrections (tol: separability).
    Analyze {
        #[arg(long)]
        gate: String,
        #[arg(long)]
        basis: String,
        /// Gate applied before the measurement.
        #[arg(long, default_value = "identity")]
        front: String,
        /// Check every verdict with the statevector oracle.
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Reproduce and self-check the success-probability table and the T-gate factor table.
    Tables,
    /// Success probability across a basis family, as CSV.
    Scan {
        #[arg(long)]
        gate: String,
        #[arg(long, value_enum)]
        family: ScanFamily,
        /// Grid points per axis.
        #[arg(long, default_value_t = 100)]
        points: usize,
        /// Fixed third angle for the beta_nl family.
        #[arg(long, default_value = "0")]
        theta3: String,
    },
    /// Single-qubit teleportation through a resource and a measurement (tol: proportionality).
    StateTeleport {
        #[arg(long)]
        basis: String,
        #[arg(long, default_value = "identity")]
        front: String,
        /// `bell` or four `[re, im]` amplitudes.
        #[arg(long, default_value = "bell")]
        resource: String,
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Sampled gate teleportation with the derived corrections.
    Simulate {
        #[arg(long)]
        gate: String,
        #[arg(long)]
        basis: String,
        #[arg(long, default_value = "identity")]
        front: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Gate teleportation through the four-qubit resource.
    Fourway {
        #[arg(long)]
        gate: String,
        #[arg(long, default_value = "bell")]
        basis: String,
        /// Seed of the random input state.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Orthonormality and capability report for a basis (tol: orthonormality).
    ValidateBasis {
        #[arg(long)]
        basis: String,
    },
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invocation {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn dispatch(cli: Cli) -> commands::CmdResult {
    if let Some(t) = cli.tol {
        if !(t.is_finite() && t > 0.0) {
            return Err(CliError::Usage(format!(
                "tolerance must be positive and finite, got {t}"
            )));
        }
    }
    let (fmt, tol) = (cli.format, cli.tol);
    match cli.command {
        Command::Kak { gate } => commands::kak(fmt, tol, &GateArg::parse(&gate)?),
        Command::Analyze {
            gate,
            basis,
            front,
            verify,
            trials,
            seed,
        } => {
            let front = GateArg::parse(&front)?;
            let basis = BasisArg::parse(&basis, &front.matrix)?;
            commands::analyze(
                fmt,
                tol,
                &GateArg::parse(&gate)?,
                &basis,
                &front,
                verify,
                trials,
                seed,
            )
        }
        Command::Tables => commands::tables(fmt, tol),
        Command::Scan {
            gate,
            family,
            points,
            theta3,
        } => commands::scan(
            tol,
            &GateArg::parse(&gate)?,
            family,
            points,
            parse_angle(&theta3)?,
        ),
        Command::StateTeleport {
            basis,
            front,
            resource,
            verify,
            trials,
            seed,
        } => {
            let front = GateArg::parse(&front)?;
            let basis = BasisArg::parse(&basis, &front.matrix)?;
            commands::state_teleport(
                fmt,
                tol,
                &parse_resource(&resource)?,
                &front,
                &basis,
                verify,
                trials,
                seed,
            )
        }
        Command::Simulate {
            gate,
            basis,
            front,
            trials,
            seed,
        } => {
            let front = GateArg::parse(&front)?;
            let basis = BasisArg::parse(&basis, &front.matrix)?;
            commands::simulate(
                fmt,
                tol,
                &GateArg::parse(&gate)?,
                &basis,
                &front,
                trials,
                seed,
            )
        }
        Command::Fourway { gate, basis, seed } => {
            let basis = BasisArg::parse(&basis, &nalgebra::Matrix4::identity())?;
            commands::fourway(fmt, tol, &GateArg::parse(&gate)?, &basis, seed)
        }
        Command::ValidateBasis { basis } => commands::validate(
            fmt,
            tol,
            &BasisArg::parse_unchecked(&basis, &nalgebra::Matrix4::identity())?,
        ),
    }
}

/// Parse `args` (program name first) and run the command.
pub fn run<I, T>(args: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let ok = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            return Invocation {
                stdout: if ok { text.clone() } else { String::new() },
                stderr: if ok { String::new() } else { text },
                code: if ok { 0 } else { 1 },
            };
        }
    };
    match dispatch(cli) {
        Ok((stdout, code)) => Invocation {
            stdout,
            stderr: String::new(),
            code,
        },
        Err(e) => Invocation {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: e.exit_code(),
        },
    }
}
