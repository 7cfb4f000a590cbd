//! Analytic continuation of solutions of Kummer's equation
//! z y'' + (b − z) y' − a y = 0 along the real axis by Taylor stepping.
//!
//! Power series of ₁F₁ and U lose roughly exp(2√|a z| − |z|/2) in relative
//! accuracy when a and z have opposite signs. Starting from a point close to
//! the origin, where the series are clean, and stepping outward keeps the
//! error at a few ulps per step in the oscillatory zone.

use super::{SpecFunError, SpecFunResult};

/// Exponent of the estimated cancellation factor of the series at (a, z).
pub(crate) fn series_loss(a: f64, z: f64) -> f64 {
    if a * z >= 0.0 {
        return 0.0;
    }
    2.0 * (a.abs() * z.abs()).sqrt() - 0.5 * z.abs()
}

/// Continuation is worthwhile once the series would lose ~3.5 digits.
pub(crate) const LOSS_THRESHOLD: f64 = 8.0;

/// Starting point for the continuation: same sign as `z`, close enough to 0
/// that 2√|a z_s| ≈ 2.8.
pub(crate) fn start_point(a: f64, z: f64) -> f64 {
    z.signum() * (2.0 / a.abs().max(1.0)).min(0.5 * z.abs())
}

/// Carries (y, y') of a solution from `z0` to `z1` (same sign, both ≠ 0).
pub(crate) fn continue_solution(a: f64, b: f64, z0: f64, y0: f64, dy0: f64, z1: f64) -> SpecFunResult<(f64, f64)> {
    if z0 == 0.0 || z1 == 0.0 || z0.signum() != z1.signum() {
        return Err(SpecFunError::Domain(format!("continuation path {z0} → {z1} crosses the origin")));
    }
    let (mut z, mut y, mut dy) = (z0, y0, dy0);
    let dir = (z1 - z0).signum();
    let mut steps = 0usize;
    while (z1 - z) * dir > 0.0 {
        let omega = (a.abs() / z.abs()).sqrt() + 1.0 + (b.abs() / z.abs()).min(1.0);
        let h = (0.4 * z.abs()).min(1.2 / omega).min((z1 - z).abs()) * dir;
        let (ny, ndy) = taylor_step(a, b, z, y, dy, h)?;
        z = if ((z1 - z) - h).abs() < 1e-15 * z1.abs() { z1 } else { z + h };
        y = ny;
        dy = ndy;
        steps += 1;
        if steps > 200_000 {
            return Err(SpecFunError::NonConvergence(steps));
        }
    }
    Ok((y, dy))
}

fn taylor_step(a: f64, b: f64, zc: f64, y: f64, dy: f64, h: f64) -> SpecFunResult<(f64, f64)> {
    // y(zc + h) = Σ c_k h^k; the ODE gives
    // zc (k+2)(k+1) c_{k+2} = −(k+1)(k + b − zc) c_{k+1} + (k + a) c_k
    let (mut c0, mut c1) = (y, dy);
    let mut val = c0 + c1 * h;
    let mut der = c1;
    let mut hp = h; // h^{k+1}
    let scale = y.abs() + (dy * h).abs();
    let mut quiet = 0;
    for k in 0..400 {
        let kf = k as f64;
        let c2 = (-(kf + 1.0) * (kf + b - zc) * c1 + (kf + a) * c0) / (zc * (kf + 2.0) * (kf + 1.0));
        der += (kf + 2.0) * c2 * hp;
        hp *= h;
        let term = c2 * hp;
        val += term;
        if !val.is_finite() {
            return Err(SpecFunError::Overflow("Kummer continuation".into()));
        }
        if term.abs() <= 1e-18 * scale.max(val.abs()) {
            quiet += 1;
            if quiet >= 3 {
                return Ok((val, der));
            }
        } else {
            quiet = 0;
        }
        c0 = c1;
        c1 = c2;
    }
    Err(SpecFunError::NonConvergence(400))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_solution() {
        // a = b: y = e^z solves z y'' + (b − z) y' − b y = 0
        let (y, dy) = continue_solution(2.0, 2.0, 0.1, 0.1f64.exp(), 0.1f64.exp(), 7.5).unwrap();
        assert!((y / 7.5f64.exp() - 1.0).abs() < 1e-13);
        assert!((dy / 7.5f64.exp() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn origin_crossing_rejected() {
        assert!(continue_solution(1.0, 2.0, -0.5, 1.0, 0.0, 0.5).is_err());
    }
}
