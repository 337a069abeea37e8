use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("self-loop on vertex {vertex}{}", line.map(|l| format!(" (line {l})")).unwrap_or_default())]
    SelfLoop { vertex: usize, line: Option<usize> },

    #[error("vertex {vertex} out of range for graph of order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parity violation: {n} vertices of degree {degree} give an odd degree sum")]
    Parity { n: usize, degree: usize },

    #[error("degree sum {0} is odd")]
    OddDegreeSum(usize),

    #[error("generation failed after {attempts} attempts")]
    GenerationFailed { attempts: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error(
        "power iteration did not converge after {iterations} iterations (best estimate {estimate})"
    )]
    NotConverged { estimate: f64, iterations: usize },

    #[error("{what} = {value} exceeds oracle cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
