use thiserror::Error;

use crate::hypergroup::ValidationReport;

#[derive(Debug, Error)]
pub enum HyperError {
    /// Shapes of the input do not fit together (wrong tensor size, bad index).
    #[error("structural error: {0}")]
    Structural(String),

    #[error("axiom violation: {0}")]
    Axiom(ValidationReport),

    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("dual is not a hypergroup: coefficient c[{}][{}][{}] = {value:.3e}", triple.0, triple.1, triple.2)]
    DualNotHypergroup {
        triple: (usize, usize, usize),
        value: f64,
    },

    #[error("mismatch: {0}")]
    Mismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, HyperError>;

pub(crate) fn check_index(index: usize, size: usize) -> Result<()> {
    if index < size {
        Ok(())
    } else {
        Err(HyperError::IndexOutOfRange { index, size })
    }
}
