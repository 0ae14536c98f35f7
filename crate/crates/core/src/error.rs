use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("oracle returned a non-finite value at {point:?}")]
    NonFiniteGradient { point: Vec<f64> },

    #[error("non-finite iterate at iteration {t}, step {r}")]
    NonFiniteIterate { t: usize, r: usize, point: Vec<f64> },

    #[error("no intermediate-value witness: residual {residual:e} exceeds tolerance {tol:e}")]
    IvtResidual { residual: f64, tol: f64 },

    #[error("sweep cell (n_a = {n_a}, n_b = {n_b}) failed: {source}")]
    SweepCell {
        n_a: usize,
        n_b: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
