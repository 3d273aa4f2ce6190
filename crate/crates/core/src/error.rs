use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{op}: incompatible shapes {left:?} and {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("{op}: expected a square matrix, got {rows}x{cols}")]
    NotSquare { op: &'static str, rows: usize, cols: usize },

    #[error("matrix contains NaN or infinite entries")]
    NonFinite,

    #[error("{op}: matrix has non-zero imaginary parts but a real matrix is required")]
    NotReal { op: &'static str },

    #[error("split index {k} out of range for a {n}x{n} matrix")]
    InvalidSplit { k: usize, n: usize },

    #[error("SVD did not converge after {sweeps} sweeps")]
    SvdNoConvergence { sweeps: usize },

    #[error("linear feasibility solver exceeded {iterations} pivots")]
    LpIterationLimit { iterations: usize },

    #[error("size {n} exceeds the exact-enumeration cap {cap}")]
    SizeCap { n: usize, cap: usize },

    #[error("required conditions violated: {}", .0.join(", "))]
    ConditionViolated(Vec<String>),

    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),

    #[error("generator could not satisfy constraints {constraints:?} after {retries} attempts")]
    GeneratorExhausted { constraints: Vec<String>, retries: usize },

    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
}
