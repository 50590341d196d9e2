use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole of the gamma function at {re}{im:+}i")]
    Pole { re: f64, im: f64 },

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("series did not converge within {terms} terms")]
    NonConvergence { terms: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("degenerate denominator at n = {n}")]
    DegenerateDenominator { n: usize },

    #[error("negative radicand at n = {n} ({value})")]
    NegativeRadicand { n: usize, value: f64 },

    #[error("integrand tail {tail:e} at y = {y_max} exceeds tolerance {tolerance:e}")]
    Truncation {
        y_max: f64,
        tail: f64,
        tolerance: f64,
    },

    #[error("NaN encountered in {0}")]
    NaN(&'static str),

    #[error("imaginary residue {residue:e} exceeds tolerance for real value {value}")]
    ImaginaryResidue { value: f64, residue: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
}
