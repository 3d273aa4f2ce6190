use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;
pub const EXIT_SIZE_CAP: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Library(#[from] gppt::Error),
    #[error("cannot write output: {0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use gppt::Error as E;
        match self {
            CliError::Usage(_) | CliError::Parse(_) => EXIT_USAGE,
            CliError::Output(_) => EXIT_NUMERIC,
            CliError::Library(e) => match e {
                E::SizeCap { .. } => EXIT_SIZE_CAP,
                E::DimensionMismatch { .. }
                | E::NotSquare { .. }
                | E::NotReal { .. }
                | E::InvalidSplit { .. }
                | E::UnknownTheorem(_)
                | E::InvalidSpec(_) => EXIT_USAGE,
                E::NonFinite
                | E::SvdNoConvergence { .. }
                | E::LpIterationLimit { .. }
                | E::ConditionViolated(_)
                | E::GeneratorExhausted { .. } => EXIT_NUMERIC,
            },
        }
    }
}
