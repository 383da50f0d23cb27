use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("degenerate symbol: {0}")]
    DegenerateSymbol(String),

    #[error("construction inconsistency: {0}")]
    ConstructionInconsistency(String),

    #[error("evaluation on singular support: {0}")]
    Singularity(String),

    #[error("kernel pole: conj(lambda)*z = 1")]
    Pole,

    #[error("grid of {got} points is too coarse for degree {degree}; need M >= {required}")]
    Undersampled {
        degree: usize,
        required: usize,
        got: usize,
    },

    #[error("degenerate target: {0}")]
    DegenerateTarget(String),

    #[error("quadrature refused: {0}")]
    Quadrature(String),

    #[error("numerical inconsistency: {0}")]
    NumericalInconsistency(String),
}

impl Error {
    /// True for errors that reject inputs violating an operation's
    /// hypotheses, as opposed to internal numerical failures.
    pub fn is_refusal(&self) -> bool {
        !matches!(self, Error::NumericalInconsistency(_))
    }
}
