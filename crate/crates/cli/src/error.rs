use std::fmt;
use std::process::ExitCode;

use bpb_core::BpbError;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Regime(String),
    /// A verification check or corrector bound failed.
    Failed(String),
    Io(String),
    /// The reader went away (`bpb ... | head`); not worth reporting.
    Closed,
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Closed => ExitCode::SUCCESS,
            CliError::Failed(_) | CliError::Io(_) => ExitCode::from(1),
            CliError::Usage(_) => ExitCode::from(2),
            CliError::Regime(_) => ExitCode::from(3),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Regime(m) => write!(f, "regime error: {m}"),
            CliError::Failed(m) => write!(f, "failed: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::Closed => write!(f, "output closed"),
        }
    }
}

impl From<BpbError> for CliError {
    fn from(e: BpbError) -> Self {
        let msg = e.to_string();
        match e {
            BpbError::Regime(_) | BpbError::EmptyConstraintSet(_) => CliError::Regime(msg),
            BpbError::CorrectorFailed { .. } => CliError::Failed(msg),
            _ => CliError::Usage(msg),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return CliError::Closed;
        }
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        match e.into_kind() {
            csv::ErrorKind::Io(io) => io.into(),
            other => CliError::Io(format!("{other:?}")),
        }
    }
}
