//! Real-argument special functions used by the bound-state equations.
//!
//! | Function | Notes |
//! |----------|-------|
//! | [`gamma`], [`rgamma`], [`ln_gamma`], [`digamma`] | Lanczos (g = 7) plus reflection |
//! | [`kummer_m`] | ₁F₁ by power series; z < 0 via Kummer's transformation |
//! | [`tricomi_u`] | U(a, b, z) for integer b ∈ {0, 1, 2, 3}; real part on the cut z < 0 |
//! | [`bessel_j`], [`bessel_y`], [`bessel_zero`] | integer order, real argument |
//!
//! All functions are pure and thread-safe.

mod bessel;
mod continuation;
mod gamma;
mod kummer;
mod tricomi;

pub use bessel::{bessel_j, bessel_y, bessel_zero, BesselKind};
pub use gamma::{cos_pi, digamma, gamma, ln_gamma, rgamma, sin_pi};
pub use kummer::{kummer_m, kummer_m_bessel_limit, kummer_m_with};
pub use tricomi::{
    tricomi_u, tricomi_u_bessel_limit, tricomi_u_over_gamma, tricomi_u_over_gamma_with, tricomi_u_re_scaled,
    tricomi_u_re_scaled_with, tricomi_u_with, UValue,
};

/// Errors raised by special-function evaluation.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpecFunError {
    #[error("pole of the gamma function at x = {0}")]
    Pole(f64),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("argument outside domain: {0}")]
    Domain(String),
    #[error("series did not converge within {0} terms")]
    NonConvergence(usize),
    #[error("overflow while evaluating {0}")]
    Overflow(String),
}

pub type SpecFunResult<T> = Result<T, SpecFunError>;

/// Series/asymptotic controls shared by the hypergeometric routines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FuncEvalConfig {
    /// Relative truncation tolerance for power series.
    pub series_tol: f64,
    /// Hard cap on the number of series terms.
    pub max_terms: usize,
    /// |z| above which the large-argument expansion of U is attempted first.
    pub asymptotic_switch: f64,
}

impl Default for FuncEvalConfig {
    fn default() -> Self {
        Self { series_tol: 1e-17, max_terms: 20_000, asymptotic_switch: 30.0 }
    }
}

impl FuncEvalConfig {
    pub fn validate(&self) -> SpecFunResult<()> {
        if !(self.series_tol > 0.0) {
            return Err(SpecFunError::Parameter("series_tol must be > 0".into()));
        }
        if self.max_terms < 50 {
            return Err(SpecFunError::Parameter("max_terms must be ≥ 50".into()));
        }
        if !(self.asymptotic_switch > 0.0) {
            return Err(SpecFunError::Parameter("asymptotic_switch must be > 0".into()));
        }
        Ok(())
    }
}
