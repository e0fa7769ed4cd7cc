use thiserror::Error;

/// Errors raised by the exact engines, the asymptotic evaluators and the CLI.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("gamma function pole at {0}")]
    Pole(String),

    #[error("coverage error: {0}")]
    Coverage(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("enumeration guard: n = {n} exceeds the cap {cap}")]
    Guard { n: u64, cap: u64 },

    #[error("singular value: {0}")]
    Singularity(String),

    #[error("imaginary residue {residue:e} exceeds tolerance {tolerance:e} in {context}")]
    ImaginaryResidue {
        context: &'static str,
        residue: f64,
        tolerance: f64,
    },

    #[error("index error: {0}")]
    Index(String),

    #[error("profile kind mismatch: expected a {expected} profile")]
    Kind { expected: &'static str },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("malformed partition table cache: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
