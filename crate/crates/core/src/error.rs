use crate::specfun::SpecFunError;

/// Errors from the physics layer.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("energy {energy} outside the window ({lo}, {hi})")]
    OutsideWindow { energy: f64, lo: f64, hi: f64 },
    #[error("regime {regime} is inconsistent with alpha = {alpha}, E = {energy}")]
    RegimeMismatch { regime: &'static str, alpha: f64, energy: f64 },
    #[error("singular point: {0}")]
    Singular(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("integration failed: {0}")]
    Integration(String),
}

pub type Result<T> = std::result::Result<T, Error>;
