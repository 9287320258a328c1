use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{what} cap exceeded: {actual} > {cap}; {hint}")]
    CapExceeded { what: &'static str, actual: u128, cap: u128, hint: String },

    #[error("root finder did not converge after {iterations} sweeps (worst residual {worst:e})")]
    NoConvergence { iterations: usize, worst: f64, residuals: Vec<f64> },

    #[error("dynamic program and brute force disagree: dp {dp:?} vs brute {brute:?}")]
    Mismatch { dp: Vec<String>, brute: Vec<String> },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
