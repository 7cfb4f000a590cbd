//! Kummer's confluent hypergeometric function ₁F₁(a; b; z) for real arguments.

use super::bessel::bessel_j;
use super::continuation::{continue_solution, series_loss, start_point, LOSS_THRESHOLD};
use super::gamma::gamma;
use super::{FuncEvalConfig, SpecFunError, SpecFunResult};

fn check_b(b: f64) -> SpecFunResult<()> {
    if b <= 0.0 && b == b.trunc() {
        return Err(SpecFunError::Parameter(format!("b = {b} is a non-positive integer")));
    }
    Ok(())
}

/// Plain power series Σ (a)ₖ zᵏ / ((b)ₖ k!).
///
/// Stops once every remaining Pochhammer factor has a fixed sign, the next
/// term ratio is below 1/2 and the current term is below `series_tol`
/// relative to the partial sum.
pub(crate) fn kummer_series(a: f64, b: f64, z: f64, cfg: &FuncEvalConfig) -> SpecFunResult<f64> {
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    for k in 0..cfg.max_terms {
        let kf = k as f64;
        term *= (a + kf) * z / ((b + kf) * (kf + 1.0));
        sum += term;
        if term == 0.0 {
            return Ok(sum);
        }
        if !sum.is_finite() {
            return Err(SpecFunError::Overflow(format!("1F1({a}, {b}, {z})")));
        }
        let next_ratio = (a + kf + 1.0) * z / ((b + kf + 1.0) * (kf + 2.0));
        if a + kf + 1.0 > 0.0
            && b + kf + 1.0 > 0.0
            && next_ratio.abs() < 0.5
            && term.abs() <= cfg.series_tol * sum.abs()
        {
            return Ok(sum);
        }
    }
    Err(SpecFunError::NonConvergence(cfg.max_terms))
}

/// ₁F₁(a; b; z) with default tolerances.
pub fn kummer_m(a: f64, b: f64, z: f64) -> SpecFunResult<f64> {
    kummer_m_with(a, b, z, &FuncEvalConfig::default())
}

/// ₁F₁(a; b; z). Negative arguments go through Kummer's transformation
/// ₁F₁(a; b; z) = eᶻ ₁F₁(b − a; b; −z), which keeps the series free of
/// alternating cancellation for moderate a. When a and z have opposite signs
/// and |a z| is large the value is continued along the ODE from a point
/// near the origin instead.
pub fn kummer_m_with(a: f64, b: f64, z: f64, cfg: &FuncEvalConfig) -> SpecFunResult<f64> {
    check_b(b)?;
    if z == 0.0 {
        return Ok(1.0);
    }
    if series_loss(a, z) > LOSS_THRESHOLD {
        let zs = start_point(a, z);
        let y = kummer_direct(a, b, zs, cfg)?;
        let dy = a / b * kummer_direct(a + 1.0, b + 1.0, zs, cfg)?;
        return Ok(continue_solution(a, b, zs, y, dy, z)?.0);
    }
    kummer_direct(a, b, z, cfg)
}

fn kummer_direct(a: f64, b: f64, z: f64, cfg: &FuncEvalConfig) -> SpecFunResult<f64> {
    if z < 0.0 {
        let s = kummer_series(b - a, b, -z, cfg)?;
        return Ok(z.exp() * s);
    }
    kummer_series(a, b, z, cfg)
}

/// Large-a limit of ₁F₁ evaluated at −y/a, with b a positive integer:
/// ₁F₁(a; b; −y/a) → Γ(b) y^{(1−b)/2} J_{b−1}(2√y) as a → ∞.
pub fn kummer_m_bessel_limit(b: u32, y: f64) -> SpecFunResult<f64> {
    if b == 0 {
        return Err(SpecFunError::Parameter("b must be ≥ 1".into()));
    }
    if y <= 0.0 {
        return Err(SpecFunError::Domain(format!("Bessel limit needs y > 0, got {y}")));
    }
    let nu = b - 1;
    Ok(gamma(b as f64)? * y.powf(0.5 * (1.0 - b as f64)) * bessel_j(nu, 2.0 * y.sqrt()))
}
