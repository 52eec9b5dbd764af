use thiserror::Error;

/// Errors raised by the simulator core.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("ambient dimension {0} is odd; a symplectic space needs 2n coordinates")]
    OddAmbient(usize),

    #[error("subspace of dimension {dim} exceeds the enumeration cap {cap}")]
    EnumerationCap { dim: usize, cap: usize },

    #[error("block size {k} does not divide qubit count {n}")]
    BlockSize { n: usize, k: usize },

    #[error("subspace is not isotropic")]
    NotIsotropic,

    #[error("matrix does not preserve the symplectic form")]
    NotSymplectic,

    #[error("{what} = {value} out of range ({allowed})")]
    OutOfRange {
        what: &'static str,
        value: String,
        allowed: &'static str,
    },

    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("infeasible parameters: {0}")]
    Infeasible(String),
}

impl Error {
    pub(crate) fn out_of_range(what: &'static str, value: impl ToString, allowed: &'static str) -> Self {
        Error::OutOfRange {
            what,
            value: value.to_string(),
            allowed,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dims(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left, right })
    }
}
